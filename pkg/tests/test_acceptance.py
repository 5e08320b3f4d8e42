"""One test per acceptance criterion, exact equality throughout."""

from agcodes import acceptance as acc


def _check(res):
    failed = [k for k, v in res["details"].items() if not v]
    assert res["within_budget"], f"criterion {res['id']} over its {res['budget_s']} s budget"
    assert res["passed"], f"criterion {res['id']} ({res['title']}) failed: {failed}"


def test_criterion_1_example_3_1_residue_tables():
    _check(acc.criterion_1())


def test_criterion_2_example_3_1_codes():
    _check(acc.criterion_2())


def test_criterion_3_example_3_2():
    _check(acc.criterion_3())


def test_criterion_4_residue_theorem_50_random_scenarios():
    _check(acc.criterion_4(trials=50))


def test_criterion_5_orthogonality_100_random_scenarios():
    _check(acc.criterion_5(trials=100))


def test_criterion_6_round_trips():
    _check(acc.criterion_6())


def test_criterion_7_tensor_reed_solomon_q4():
    _check(acc.criterion_7())


def test_criterion_8_product_checks():
    _check(acc.criterion_8())


def test_criterion_9_property_suites():
    _check(acc.criterion_9())

import pytest

import oddtau


def test_weights():
    assert oddtau.supported_weights() == [12, 16, 18, 20, 22, 26]


def test_tau_values():
    assert oddtau.tau(12, 6) == [1, -24, 252, -1472, 4830, -6048]
    t = oddtau.tau(12, 16)
    assert t[15] == 987136
    # multiplicative: tau(6) = tau(2) tau(3)
    assert t[5] == t[1] * t[2]


def test_tau_matches_product_expansion():
    # q * prod (1 - q^n)^24, expanded with plain Python ints
    N = 40
    poly = [1] + [0] * (N - 1)
    for n in range(1, N):
        for _ in range(24):
            for i in range(N - 1, n - 1, -1):
                poly[i] -= poly[i - n]
    assert oddtau.tau(12, N) == poly


def test_dset():
    values, source = oddtau.dset(12, 131)
    assert values == [3, 5, 11, 13, 131]
    assert source == "default"
    with pytest.raises(ValueError):
        oddtau.dset(14, 3)


def test_rule_out_15():
    c = oddtau.rule_out(12, 15)
    assert c["status"] == "inadmissible"
    assert c["completeness"] == "certified"
    assert c["solutions"] == []


def test_rule_out_finds_tau9():
    c = oddtau.rule_out(12, -113643)
    assert c["status"] == "solutions-found"
    assert {"p": 3, "exponent": 2} in c["solutions"]


def test_rule_out_rejects_even():
    with pytest.raises(ValueError):
        oddtau.rule_out(12, 16)


def test_verify():
    assert oddtau.verify(12, -113643, 100) == [9]
    assert oddtau.verify(12, 15, 2000) == []


def test_certify_31():
    r = oddtau.certify(31)
    pts = {(s["X"], s["Y"]) for s in r["solutions"]}
    assert pts == {(1, 4), (-1, -4)}


def test_solve_raw():
    s = oddtau.solve("raw", 1, 2, 3)  # x^2 + 2 = y^3
    assert s["completeness"].startswith("complete")
    assert s["solutions"] == [[-5, 3], [5, 3]]


def test_solve_h_curve():
    s = oddtau.solve("h", 22, 131)
    assert [1, 23] in s["curve_points"]
    for X, Y in s["curve_points"]:
        assert Y * Y == 5 * X ** 42 + 4 * 131


def test_theorem_4():
    rep = oddtau.theorem(4)
    rows = {(r["part"], r["value"]): r["verdict"] for r in rep["rows"]}
    assert rows[("4.2", 3617)] == "confirmed"
    assert "contradicted" not in rows.values()

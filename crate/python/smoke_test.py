"""Smoke test for the zetalab Python extension.

Build and install first:  pip install --no-build-isolation ./crates/py
Run with:                 python python/smoke_test.py   (or pytest python/)
"""

import math

import zetalab


def test_basel():
    value, err = zetalab.zeta_value(2.0)
    assert abs(value - math.pi ** 2 / 6) < 1e-12
    assert 0 < err < 1e-9


def test_conjugate_symmetry_and_first_zero():
    a, _ = zetalab.zeta_value(0.5, 14.134725)
    b, _ = zetalab.zeta_value(0.5, -14.134725)
    assert a == b.conjugate()
    assert abs(a) < 1e-3
    assert abs(zetalab.locate_zero(14.0, 14.3) - 14.134725141734693) < 1e-8


def test_derivative_and_gamma():
    d, _ = zetalab.zeta_prime(2.0)
    assert abs(d.real + 0.9375482543158437) < 1e-12
    assert abs(zetalab.gamma(5) - 24) < 1e-10
    assert zetalab.functional_equation_residual(0.5, 10.0) < 1e-8


def test_hurwitz_at_one_is_zeta():
    h, _ = zetalab.hurwitz_zeta(complex(3, 1), 1.0)
    z, _ = zetalab.zeta_value(3.0, 1.0)
    assert abs(h - z) < 1e-12


def test_arith_table():
    t = zetalab.ArithTable(100_000)
    assert t.limit == 100_000
    assert t.prime_pi(100) == 25
    assert t.mobius(30) == -1 and t.mobius(12) == 0
    assert abs(t.mangoldt(8) - math.log(2)) < 1e-15
    assert t.is_prime(99_991) and not t.is_prime(99_993)
    assert t.theta(1000) <= t.psi(1000)
    assert t.tauberian_holds(5000.0, 1.5)
    assert t.mangoldt_identity_deviation(5000) < 1e-9
    rows = t.pnt_ratios([1e3, 1e4, 1e5])
    assert len(rows) == 3 and abs(rows[-1][1] - 1) < 0.03


def test_exp_identity_and_reconstruction():
    t = zetalab.ArithTable(100_000)
    dev, bound = t.exp_identity(complex(3, 0), 100_000)
    assert dev <= bound
    r = t.reconstruct(10.0, c=2.0, t_max=500.0)
    assert abs(r["estimate"] - r["reference"]) <= 0.02 * abs(r["reference"])


def test_kernel_and_scans():
    k = zetalab.kernel(0.5, k=2, t_max=1000.0)
    assert k["deviation"] < 1e-4
    assert zetalab.kernel_exact(2.0, 1) == 0.0 and zetalab.kernel_exact(0.5, 1) == 0.5
    s = zetalab.scan_three_four_one(n_sigma=10, n_t=10)
    assert s["holds"] and s["extremum"] >= 1
    nv = zetalab.scan_nonvanishing(n=200)
    assert nv["extremum"] > 1e-3


def test_errors_raise_value_error():
    for call in (lambda: zetalab.zeta_value(-1.0), lambda: zetalab.ArithTable(1).psi(10.0)):
        try:
            call()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print(f"ok  {name}")

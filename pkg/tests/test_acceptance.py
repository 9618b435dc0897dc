"""Acceptance suite: one test per criterion, each reporting PASS or FAIL.

Run with ``pytest tests/test_acceptance.py -v`` (summary lines appear at the
end of the session) or directly with ``python3 tests/test_acceptance.py``.
"""
import functools
import random
import sys
import time
from fractions import Fraction as F

from convexproc import fixtures
from convexproc.cli import run
from convexproc.cones import PolyhedralCone as PC, dd_convert, intersect, linear_image, polar
from convexproc.control import (
    check_friend,
    check_stab_condition,
    check_weak_inv_condition,
    friend,
    stabilizable_weakly_unobservable,
    strongly_reachable,
    weakly_unobservable,
    weakly_unobservable_chain,
)
from convexproc.errors import SplitNotRational
from convexproc.linalg import RationalMatrix as M, Subspace
from convexproc.processes import ConvexProcess, at_zero, dual, image_of_point, is_eigenpair, reduce
from convexproc.spectrum import (
    SpectrumQuery,
    eigencone,
    grid_points,
    is_eigenvalue_in,
    oracle_eigenpair_search,
    spectral_upper_bound,
    spectrum_scan,
)
from convexproc.verifier import verify_assumptions
from randgen import _ivec, random_cone, random_nonlinear_process, random_process, random_system, structured_instance

import conftest

ACCEPTANCE = conftest.ACCEPTANCE


def criterion(num, title):
    def wrap(body):
        @functools.wraps(body)
        def test():
            try:
                detail = body() or ""
            except BaseException as exc:
                ACCEPTANCE[num] = (title, False, f"{type(exc).__name__}: {exc}"[:200])
                print(f"[FAIL] {num:>2}. {title}")
                raise
            ACCEPTANCE[num] = (title, True, detail)
            print(f"[PASS] {num:>2}. {title} ({detail})")

        return test

    return wrap


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


@criterion(1, "interval fixture spectrum on [0, 4]")
def test_criterion_01_interval_spectrum():
    h, k = fixtures.pair("example_interval")
    tol = F(1, 1024)
    rep, dt = timed(lambda: spectrum_scan(SpectrumQuery(h, k, (0, 4), 33, tol)))
    assert len(rep.intervals) == 1
    iv = rep.intervals[0]
    assert abs(iv.lo.value - F(1, 2)) <= tol and abs(iv.hi.value - 2) <= tol
    full = PC.full(1)
    assert all(is_eigenvalue_in(h, full, l)[0] for l in (F(1, 2), 1, 2))
    assert not any(is_eigenvalue_in(h, full, l)[0] for l in (0, F(1, 4), 3, 4))
    assert dt < 1.0
    return f"[{iv.lo.value}, {iv.hi.value}] in {dt:.3f}s"


@criterion(2, "dual of the interval fixture")
def test_criterion_02_dual():
    h = fixtures.process("example_interval")
    expected = PC.from_generators(2, rays=[(1, 2), (-1, F(-1, 2))])
    assert dual(h).graph == expected
    # the piecewise description: y >= 2x for x >= 0 and y >= x/2 for x < 0
    hd = dual(h)
    for x in (F(-3), F(-1, 2), F(0), F(1, 3), F(2)):
        edge = 2 * x if x >= 0 else x / 2
        assert hd.contains_pair((x,), (edge,)) and hd.contains_pair((x,), (edge + 1,))
        assert not hd.contains_pair((x,), (edge - F(1, 100),))
    return "exact"


@criterion(3, "dual dichotomy on 25 random non-linear processes")
def test_criterion_03_dichotomy():
    rng = random.Random(303)
    grid = grid_points(-2, 3, 21)

    def body():
        for _ in range(25):
            h = random_nonlinear_process(rng, rng.randint(1, 3))
            hd = dual(h)
            full = PC.full(h.n)
            for lam in grid:
                assert is_eigenvalue_in(h, full, lam)[0] or is_eigenvalue_in(hd, full, lam)[0], (h, lam)

    _, dt = timed(body)
    assert dt < 30.0
    return f"25 processes x 21 points in {dt:.2f}s"


@criterion(4, "2x2 fixture end to end through the CLI")
def test_criterion_04_verify_2x2():
    import json

    (code, out, _), dt = timed(lambda: run(["verify", "--process", "example_2x2"]))
    doc = json.loads(out)
    assert code == 0
    assert all(doc[f] for f in ("k_weakly_invariant", "h0_cap_k_is_subspace", "hypothesis_a", "hypothesis_b", "hypothesis_c"))
    h, k = fixtures.pair("example_2x2")
    assert doc["w_star"] == [["1", "1"]]
    assert Subspace(2, [tuple(F(x) for x in b) for b in doc["w_star"]]) == Subspace(2, [(1, 1)])
    assert doc["theorem_conclusion"] == "EIGENVECTOR_EXISTS_OUTSIDE_LINK"
    lam = F(doc["certificate"]["lambda"])
    xi = tuple(F(x) for x in doc["certificate"]["eigenvector"])
    link = k.lin()
    assert lam >= 0 and k.contains(xi) and not link.contains(xi) and is_eigenpair(h, lam, xi)
    assert is_eigenvalue_in(h, k, 2)[0] and is_eigenpair(h, 2, (1, -2)) and k.contains((1, -2))
    assert dt < 2.0
    return f"certificate lambda={lam}, xi={tuple(map(str, xi))} in {dt:.3f}s"


def _in_sigma_outside(h, k, w, lam):
    """Is there an eigenvector for ``lam`` in ``K`` but not in ``W``?

    ``eigencone cap K`` lies in the subspace ``W`` iff all of its generators do.
    """
    cap = intersect(eigencone(h, lam), k)
    return any(not w.contains(g) for g in cap.generators())


@criterion(5, "spectra equality on 10 verified instances")
def test_criterion_05_spectra_equality():
    rng = random.Random(505)
    inst = [fixtures.pair("example_2x2"), fixtures.pair("example_interval")]
    while len(inst) < 10:
        inst.append(structured_instance(rng, rng.randint(2, 3)))
    grid = [F(j, 4) for j in range(21)]
    points = 0
    for h, k in inst:
        w = k.lin()
        assert verify_assumptions(h, k, w).assumptions_hold
        kw = intersect(k, PC.from_subspace(w.perp()))
        hkw = reduce(h, k, w)
        for lam in grid:
            assert _in_sigma_outside(h, k, w, lam) == is_eigenvalue_in(hkw, kw, lam)[0], (h, k, lam)
            points += 1
    return f"{points} points agree"


def _lineal_process(rng, n):
    nrays = rng.randint(1, 2 * n)
    nlin = rng.randint(1, 2)
    return ConvexProcess(
        n,
        PC.from_generators(2 * n, [_ivec(rng, 2 * n, -2, 2) for _ in range(nrays)], [_ivec(rng, 2 * n, -2, 2) for _ in range(nlin)]),
    )


def _scaled(c, v):
    return tuple(c * a for a in v)


def _xpart(vectors, n):
    return tuple(sum(v[i] for v in vectors) for i in range(n)) if vectors else (0,) * n


@criterion(6, "H(x+y) = H(x) + L(y) on 100 random trials")
def test_criterion_06_lemma():
    rng = random.Random(606)
    for _ in range(100):
        n = rng.randint(1, 3)
        h = _lineal_process(rng, n)
        lin = h.graph.lin()
        # L: a random subspace of lin(gr H), so gr(L) is inside gr(H)
        picks = [b for b in lin.basis if rng.random() < 0.7] or list(lin.basis[:1])
        lbasis = []
        for _ in picks:
            coef = [rng.randint(-2, 2) for _ in picks]
            lbasis.append(tuple(sum(c * b[i] for c, b in zip(coef, picks)) for i in range(2 * n)))
        l = ConvexProcess(n, PC.from_subspace(Subspace(2 * n, lbasis)))
        assert l.graph.issubset(h.graph)
        # x in dom H: conic combination of graph rays plus any lineality vector
        gx = [_scaled(rng.randint(0, 3), r) for r in h.graph.rays]
        gx += [_scaled(rng.randint(-2, 2), b) for b in lin.basis]
        x = _xpart(gx, n)
        y = _xpart([_scaled(rng.randint(-2, 2), b) for b in l.graph.lineality.basis], n)
        lhs = image_of_point(h, tuple(a + b for a, b in zip(x, y)))
        rhs = image_of_point(h, x) + image_of_point(l, y)
        assert not image_of_point(h, x).is_empty()
        assert lhs == rhs, (h, l, x, y)
    return "100 trials"


@criterion(7, "geometric control suite on 50 random systems")
def test_criterion_07_control():
    rng = random.Random(707)
    skipped = probed = 0
    for _ in range(50):
        n = rng.randint(1, 4)
        s = random_system(rng, n, rng.randint(0, 3), rng.randint(0, 3))
        chain = weakly_unobservable_chain(s)
        assert len(chain) - 1 <= n
        assert all(b <= a and b.dim < a.dim for a, b in zip(chain, chain[1:]))
        v = chain[-1]
        assert check_friend(s, v, friend(s, v))
        t = strongly_reachable(s)
        assert t.perp() == weakly_unobservable(s.transpose())
        assert strongly_reachable(s.transpose()).perp() == weakly_unobservable(s)
        try:
            vg = stabilizable_weakly_unobservable(s)
        except SplitNotRational:
            skipped += 1
            continue
        assert vg <= v and (t & v) <= vg
        assert check_weak_inv_condition(s, vg) and check_stab_condition(s, vg)
        if n <= 3:
            for b in v.basis:
                if vg.contains(b):
                    continue
                ext = vg + Subspace(n, [b])
                assert not (check_weak_inv_condition(s, ext) and check_stab_condition(s, ext)), (s, b)
                probed += 1
    return f"{50 - skipped} full checks, {skipped} irrational splits skipped, {probed} extensions probed"


@criterion(8, "fast membership agrees with the LP oracle")
def test_criterion_08_oracle():
    rng = random.Random(808)
    inst = [fixtures.pair(name) for name in fixtures.PROCESS_NAMES]
    for _ in range(25):
        n = rng.randint(1, 3)
        inst.append((random_process(rng, n), random_cone(rng, n)))
    grid = grid_points(-2, 2, 17)
    checks = 0
    for h, k in inst:
        for lam in grid:
            fast = is_eigenvalue_in(h, k, lam)[0]
            xi = oracle_eigenpair_search(h, k, lam)
            assert fast == (xi is not None), (h, k, lam)
            if xi is not None:
                assert k.contains(xi) and is_eigenpair(h, lam, xi)
            checks += 1
    return f"{len(inst)} instances, {checks} checks"


@criterion(9, "cone algebra identities on 200 random cones")
def test_criterion_09_cones():
    rng = random.Random(909)
    for _ in range(200):
        n = rng.randint(1, 5)
        c = random_cone(rng, n)
        assert polar(polar(c)) == c
        d = dd_convert(c)
        rays, lin = d.v_rep()
        ineqs, eqs = d.h_rep()
        assert PC.from_generators(n, rays, lin.basis) == c
        assert PC.from_constraints(n, ineqs, eqs.basis) == c
        neg = linear_image(-M.identity(n), c)
        assert PC.from_subspace(c.lin()) == intersect(c, neg)
        assert c.Lin() == Subspace(n, list(c.generators()))
        assert polar(c).lin() == c.Lin().perp() and polar(c).Lin() == c.lin().perp()
    return "200 cones"


@criterion(10, "no spectrum member above the computed bound")
def test_criterion_10_bound():
    rng = random.Random(1010)
    inst = [p for p in (fixtures.pair(name) for name in fixtures.PROCESS_NAMES)]
    tries = 0
    while len(inst) < 40 and tries < 400:
        tries += 1
        n = rng.randint(1, 3)
        inst.append((random_process(rng, n), random_cone(rng, n)))
    used = 0
    for h, k in inst:
        if not intersect(at_zero(h), k).is_trivial():
            continue
        used += 1
        bound = spectral_upper_bound(h, k)
        for lam in grid_points(bound, bound + 2, 33):
            if lam > bound:
                assert not is_eigenvalue_in(h, k, lam)[0], (h, k, bound, lam)
    assert used >= 10
    return f"{used} instances with H(0) cap K = 0"


if __name__ == "__main__":
    import pytest

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))

"""Acceptance suite: one check per criterion, one PASS/FAIL line each.

Run standalone with ``python tests/test_acceptance.py`` or through pytest
(``pytest tests/test_acceptance.py -v -s`` shows the lines).
"""
from __future__ import annotations

import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

HERE = Path(__file__).parent
sys.path.insert(0, str(HERE))

from gwa_morita import lattice as lat  # noqa: E402
from gwa_morita.cli import EXIT_INPUT, EXIT_OK, EXIT_PRODUCT, main  # noqa: E402
from gwa_morita.degree3 import (  # noqa: E402
    GAUSSIAN,
    I2,
    N1,
    N2,
    NEG_I2,
    X,
    DirectCounterexample,
    Mat2,
    Move,
    NotInG6,
    ReductionChain,
    compose_moves,
    g6_classify,
    g6_elements,
)
from gwa_morita.gwa import RootTuple, gwa_isomorphism, roots, satisfies_sfgld  # noqa: E402
from gwa_morita.ktheory import (  # noqa: E402
    DensePoly,
    HH0Class,
    p_basis,
    schur_trace,
    trace_pi,
    trace_projective_general,
    unit_decomposition,
)
from gwa_morita.morita import Holds, hodges_n2, necessary_morita, sufficient_morita  # noqa: E402
from gwa_morita.qtorus import (  # noqa: E402
    ThetaMatrix,
    TorusHolds,
    build_nhat,
    check_torus_iso,
    morita_to_torus,
    q_simple,
    theta_of,
    theta_vec,
    torus_iso_search,
    transport_holds,
)
from gwa_morita.scalars import QQ, BasisSpec  # noqa: E402

SYM = BasisSpec(("1", "s"))
SYM2 = BasisSpec(("1", "s", "t"))
MIXED = BasisSpec.from_products(["1", "i"], {("i", "i"): {"1": -1}})


def _rq(rng: random.Random, num: int = 9, den: int = 8) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def trace_corpus(count: int = 220, seed: int = 2024) -> list[RootTuple]:
    """Distinct-root tuples, n = 2..6, half rational and half Gaussian-rational."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = 2 + len(out) % 5
        if len(out) % 2:
            vals = {GAUSSIAN({"1": _rq(rng), "i": _rq(rng, 3, 3)}) for _ in range(n)}
        else:
            vals = {QQ(_rq(rng)) for _ in range(n)}
        if len(vals) == n:
            out.append(RootTuple(tuple(sorted(vals, key=lambda x: x.sort_key()))))
    return out


def move_pairs(count: int, seed: int, paired_reflections: bool):
    """Cubic pairs linked by random generator-move sequences, with their (N, m)."""
    rng = random.Random(seed)
    out = []
    plain = [Move.SWAP_FIRST_TWO, Move.SWAP_LAST_TWO, Move.SHIFT_FIRST]
    while len(out) < count:
        if rng.random() < 0.5:
            lam = roots(*(_rq(rng, 7, 9) for _ in range(3)))
        else:
            lam = roots({"1": _rq(rng), "s": 1}, {"1": _rq(rng), "t": rng.choice([1, -1])}, _rq(rng), basis=SYM2)
        if not satisfies_sfgld(lam):
            continue
        seq = [rng.choice(plain + [Move.REFLECT]) for _ in range(rng.randint(0, 10))]
        odd = seq.count(Move.REFLECT) % 2 == 1
        if paired_reflections and odd:
            seq.insert(rng.randint(0, len(seq)), Move.REFLECT)
        mu, N, m = compose_moves(lam, seq)
        out.append((lam, mu, N, m, seq))
    return out


# --------------------------------------------------------------------------
# criteria


def criterion_1():
    expected = {I2, NEG_I2, Mat2(0, -1, 1, -1), Mat2(0, 1, -1, 1), Mat2(-1, 1, -1, 0), Mat2(1, -1, 1, 0)}
    start = time.perf_counter()
    elems = g6_elements()
    elapsed = time.perf_counter() - start
    g = N1 @ N2
    assert elems == expected, elems
    assert g @ g == N2 @ N1
    assert g @ g @ g == I2
    assert elapsed < 1e-3, elapsed
    return f"6 elements, {elapsed * 1e6:.0f} us"


def criterion_2():
    corpus = trace_corpus()
    start = time.perf_counter()
    checks = 0
    for a in corpus:
        for i in range(1, a.n + 1):
            assert schur_trace(a, i) == trace_pi(a, i), (a, i)
            checks += 1
    elapsed = time.perf_counter() - start
    assert len(corpus) >= 200
    assert elapsed < 5, elapsed
    return f"{len(corpus)} tuples, {checks} classes, {elapsed:.2f} s"


def criterion_3():
    corpus = trace_corpus()
    for a in corpus:
        cs = unit_decomposition(a)
        total = DensePoly(a.basis, [])
        for c, p in zip(cs, p_basis(a)):
            total = total + DensePoly.constant(c) * p.poly
        assert total == DensePoly(a.basis, [1]), a
        assert cs == [-(a.roots[i] - a.roots[-1]) for i in range(a.n - 1)]
    return f"{len(corpus)} tuples"


def criterion_4():
    corpus = trace_corpus(60, seed=7)
    for a in corpus:
        for i in range(1, a.n + 1):
            assert trace_projective_general(a, {i}) == trace_pi(a, i)
    a = roots(0, "1/2", "1/4")
    one = HH0Class(DensePoly(QQ, [1]), 1)
    got = trace_projective_general(a, {1, 2})
    assert got == DensePoly(QQ, [25, -32])
    assert got == trace_pi(a, 1) + trace_pi(a, 2) - one
    return "singletons agree on 60 tuples; {1,2} -> -32h + 25"


def criterion_5():
    rng = random.Random(55)
    start = time.perf_counter()
    counts = {"morita": 0, "iso": 0}
    for k in range(220):
        theta = SYM({"1": _rq(rng), "s": 1})
        kind = k % 4
        if kind == 0:
            theta2 = theta + rng.randint(-3, 3)
        elif kind == 1:
            theta2 = -theta + rng.randint(-3, 3)
        elif kind == 2:
            theta2 = SYM({"1": _rq(rng), "s": rng.choice([1, -1])})
        else:
            theta2 = SYM({"1": _rq(rng), "s": rng.choice([2, -2, 3])})
        beta = SYM(_rq(rng))
        a = RootTuple((theta, SYM(0)))
        b = RootTuple((theta2 + beta, beta))
        hodges = hodges_n2(a, b)
        nec = isinstance(necessary_morita(a, b), Holds)
        tor = isinstance(torus_iso_search(theta_of(a), theta_of(b)), TorusHolds)
        assert hodges == nec == tor, (a, b, hodges, nec, tor)
        iso = gwa_isomorphism(a, b) is not None
        assert iso == (theta2 == theta or theta2 == -theta), (a, b)
        counts["morita"] += hodges
        counts["iso"] += iso
    elapsed = time.perf_counter() - start
    assert elapsed < 5, elapsed
    assert 0 < counts["morita"] < 220 and counts["iso"] > 0
    return f"220 instances ({counts['morita']} Morita, {counts['iso']} isomorphic), {elapsed:.2f} s"


def _forced_difference_holds(lam: RootTuple, N: Mat2) -> bool:
    """Each solution has L(mu) = N L(lam) - m; check one difference is integral for every m."""
    L = (lam[2] - lam[0], lam[2] - lam[1])
    v1, v2 = N.apply(L)
    # mu3-mu1 = v1 - m1, mu3-mu2 = v2 - m2, mu2-mu1 = (v1 - v2) - (m1 - m2)
    return any(x.is_integer() for x in (v1, v2, v1 - v2))


def criterion_6():
    cases = {
        Mat2(2, 1, 1, 1): roots("1/4", "1/2", 0),
        X: RootTuple((GAUSSIAN({"1": "3/4", "i": 1}), GAUSSIAN({"1": "1/4", "i": -1}), GAUSSIAN(0))),
        Mat2(1, 0, -1, 1): None,
    }
    for N, lam_expected in cases.items():
        r = g6_classify(N)
        assert isinstance(r, NotInG6), N
        ev = r.evidence
        if isinstance(ev, ReductionChain):
            assert ev.reduces_to == X
            ev = ev.direct
        assert isinstance(ev, DirectCounterexample)
        if lam_expected is not None:
            assert ev.lam == lam_expected
        assert satisfies_sfgld(ev.lam)
        assert _forced_difference_holds(ev.lam, N)
    return "3 matrices, evidence verified"


def criterion_7():
    start = time.perf_counter()
    pairs = move_pairs(100, seed=77, paired_reflections=True)
    for lam, mu, N, m, seq in pairs:
        w = sufficient_morita(lam, mu)
        assert w is not None, (lam, mu, seq)
        assert isinstance(necessary_morita(lam, mu), Holds), (lam, mu, seq)
    # odd reflection counts fall outside the matching condition but not the necessary one
    odd = [p for p in move_pairs(40, seed=78, paired_reflections=False) if p[4].count(Move.REFLECT) % 2]
    for lam, mu, *_ in odd:
        assert isinstance(necessary_morita(lam, mu), Holds)
    elapsed = time.perf_counter() - start
    assert elapsed < 10, elapsed
    return f"100 pairs (+{len(odd)} odd-reflection pairs), {elapsed:.2f} s"


def criterion_8():
    pairs = move_pairs(100, seed=88, paired_reflections=False)
    swapped = 0
    for lam, mu, N, m, _ in pairs:
        M = morita_to_torus(lam, mu, N, m)
        assert check_torus_iso(theta_of(lam), theta_of(mu), M)
        swapped += N.det == -1
    lam = roots("1/7", {"s": 1}, {"1": "1/3", "t": 1}, basis=SYM2)
    M = morita_to_torus(lam, lam.permuted((3, 1, 2)), N1 @ N2, (0, 0))
    assert M == ((0, 1, 0), (-1, -1, 0), (2, 1, 1))
    return f"100 pairs ({swapped} with det -1) plus the 3-cycle instance"


def criterion_9():
    lam = roots({"s": 1}, {"t": 1}, "1/3", basis=SYM2)
    cycle = lam.permuted((3, 1, 2))
    corrected_id, _ = build_nhat(I2)
    corrected_g, _ = build_nhat(N1 @ N2)
    assert transport_holds(corrected_id, lam, lam)
    assert transport_holds(corrected_g, lam, cycle)
    literal_id, _ = build_nhat(I2, alternative_cd=True)
    assert literal_id == ((1, 0, 0), (0, 1, 0), (2, -2, 1))
    assert not transport_holds(literal_id, lam, lam)
    return "corrected pair transports; literal pair fails for N = I2"


def criterion_10():
    rng = random.Random(1010)
    bases = [QQ, SYM2, MIXED]
    for k in range(500):
        B = bases[k % 3]
        M = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)]
        t = [B({"1": _rq(rng), **{x: rng.randint(-3, 3) for x in B.symbols[1:]}}) for _ in range(3)]
        T = ThetaMatrix(((B(0), t[0], t[1]), (-t[0], B(0), t[2]), (-t[1], -t[2], B(0))))
        zero = B(0)
        MtTM = [
            [sum((T[p, q] * (M[p][i] * M[q][j]) for p in range(3) for q in range(3)), zero) for j in range(3)]
            for i in range(3)
        ]
        lhs = [MtTM[1][2], MtTM[0][2], MtTM[0][1]]
        rhs = lat.matvec(lat.transpose(lat.unsigned_cofactor_matrix(M)), theta_vec(T))
        assert lhs == rhs, (M, T)
    return "500 pairs"


def criterion_11():
    rng = random.Random(1111)
    qs = 0
    for _ in range(200):
        n = rng.randint(2, 4)
        a = roots(*({"1": _rq(rng, 4, 4), "s": rng.randint(-2, 2), "t": rng.randint(-1, 1)} for _ in range(n)), basis=SYM2)
        if q_simple(a):
            qs += 1
            assert satisfies_sfgld(a), a
    for c in (0, "1/3", "-5/2"):
        ap = roots(c, {"1": c, "s": 1}, {"1": c, "s": 2}, basis=SYM)
        assert satisfies_sfgld(ap) and not q_simple(ap)
    assert qs > 0
    return f"200 tuples ({qs} q-simple); arithmetic progressions separate the notions"


def _cli(argv):
    import contextlib
    import io

    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue()


def criterion_12():
    data, golden = HERE / "data", HERE / "golden"
    cases = [
        ("analyze.json", ["analyze", "--input", str(data / "analyze.json")]),
        ("g6_2111.json", ["g6", "--matrix", "2,1;1,1"]),
        ("morita_congruence.json", ["morita", "--input", str(data / "morita_congruence.json")]),
    ]
    for name, argv in cases:
        code, out = _cli(argv)
        assert code == EXIT_OK
        assert out == (golden / name).read_text(), name
    assert _cli(["g6", "--matrix", "nonsense"])[0] == EXIT_INPUT
    assert _cli(["trace", "--input", str(data / "morita_congruence.json")])[0] == EXIT_PRODUCT
    return "3 goldens byte-identical; exits 0/2/3"


CRITERIA = [
    (1, "G6 exactness", criterion_1),
    (2, "trace-formula agreement", criterion_2),
    (3, "unit decomposition", criterion_3),
    (4, "Bezout-trace consistency", criterion_4),
    (5, "degree-2 triangle", criterion_5),
    (6, "counterexample suite", criterion_6),
    (7, "sufficient implies necessary", criterion_7),
    (8, "Morita to torus pipeline", criterion_8),
    (9, "c,d correction pin", criterion_9),
    (10, "vectorization identity", criterion_10),
    (11, "q-simplicity ordering", criterion_11),
    (12, "CLI goldens", criterion_12),
]


def _run(number, title, fn):
    try:
        detail = fn()
    except Exception as exc:  # report, then re-raise for pytest
        print(f"criterion {number:2d} FAIL  {title}: {type(exc).__name__}: {exc}")
        raise
    print(f"criterion {number:2d} PASS  {title}: {detail}")


@pytest.mark.parametrize("number, title, fn", CRITERIA, ids=[f"c{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(number, title, fn):
    _run(number, title, fn)


if __name__ == "__main__":
    failed = 0
    for number, title, fn in CRITERIA:
        try:
            _run(number, title, fn)
        except Exception:
            failed += 1
    sys.exit(1 if failed else 0)

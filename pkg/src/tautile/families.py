"""Constructors for the named symmetric algebras and a few small helpers.

Arrow names: ``alpha{i}``, ``beta{j}``, ``gamma{k}``, ``sigma{..}``.
Vertex names: the hub is ``0``; the inner vertices of the alpha, beta and
gamma cycles are ``A{i}``, ``B{j}``, ``C{k}`` (``A{i}`` is the target of
``alpha{i}``).  In the two-vertex quiver of T(p,q) the second hub is ``00``
and the extra vertex on the sigma path of T(2,2,r)* is ``S1``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import Arrow, BoundQuiverAlgebra, Provenance, Quiver, RelationElement
from .linalg import QQ, ScalarField

FAMILIES = ("Apq", "Lambda", "Gamma", "Tpqr", "Tpq", "T22rStar", "Omega", "PreprojA")


class ParameterOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple

    def __str__(self):
        return f"{self.family}({','.join(str(p) for p in self.params)})"


def _seq(prefix: str, i: int, j: int) -> list:
    return [f"{prefix}{k}" for k in range(i, j + 1)]


def _rel(*terms) -> RelationElement:
    return RelationElement(tuple((c, tuple(p)) for c, p in terms))


def _mono(path) -> RelationElement:
    return _rel((1, path))


def _cycle(prefix: str, arrow: str, length: int, hub: str = "0", end: str | None = None):
    """Vertices and arrows of a path hub -> ... -> end of the given length."""
    end = hub if end is None else end
    inner = [f"{prefix}{k}" for k in range(1, length)]
    stops = [hub] + inner + [end]
    arrows = [Arrow(f"{arrow}{k}", stops[k - 1], stops[k]) for k in range(1, length + 1)]
    return inner, arrows


def delta_quiver(*lengths, names=("alpha", "beta", "gamma"), prefixes=("A", "B", "C")) -> Quiver:
    """Delta(p,q) / Delta(p,q,r): cycles of the given lengths through hub 0."""
    vertices, arrows = ["0"], []
    for length, name, prefix in zip(lengths, names, prefixes):
        inner, arr = _cycle(prefix, name, length)
        vertices += inner
        arrows += arr
    return Quiver(tuple(vertices), tuple(arrows))


def _check(cond: bool, msg: str):
    if not cond:
        raise ParameterOutOfRange(msg)


def _finish(q, rels, spec, field, cap):
    return BoundQuiverAlgebra(q, rels, field, cap, provenance=Provenance("family", None, {"family": str(spec)}),
                              name=str(spec))


def algebra_Apq(p: int, q: int, field: ScalarField = QQ, cap: int = 30) -> BoundQuiverAlgebra:
    _check(1 <= p <= q, "A(p,q) needs 1 <= p <= q")
    a, b = _seq("alpha", 1, p), _seq("beta", 1, q)
    rels = [_rel((1, a + b), (-1, b + a)), _mono([a[-1], a[0]]), _mono([b[-1], b[0]])]
    for i in range(2, p):
        rels.append(_mono(_seq("alpha", i, p) + b + _seq("alpha", 1, i)))
    for j in range(2, q):
        rels.append(_mono(_seq("beta", j, q) + a + _seq("beta", 1, j)))
    return _finish(delta_quiver(p, q), rels, FamilySpec("Apq", (p, q)), field, cap)


def algebra_Lambda(m: int, field: ScalarField = QQ, cap: int = 30) -> BoundQuiverAlgebra:
    _check(m >= 2, "Lambda(m) needs m >= 2")
    b = _seq("beta", 1, m)
    rels = [_rel((1, ["alpha1", "alpha1"]), (-1, b + b)), _mono(["alpha1", "beta1"]), _mono([b[-1], "alpha1"])]
    for j in range(2, m):
        rels.append(_mono(_seq("beta", j, m) + b + _seq("beta", 1, j)))
    return _finish(delta_quiver(1, m), rels, FamilySpec("Lambda", (m,)), field, cap)


def algebra_Gamma(n: int, field: ScalarField = QQ, cap: int = 30) -> BoundQuiverAlgebra:
    _check(n >= 1, "Gamma(n) needs n >= 1")
    base = delta_quiver(2, 2, n)
    # vertex order: alpha-vertex, beta-vertex, hub, gamma chain
    order = ("A1", "B1", "0") + tuple(f"C{k}" for k in range(1, n))
    q = Quiver(order, base.arrows)
    c = _seq("gamma", 1, n)
    rels = [
        _rel((1, ["alpha1", "alpha2"]), (-1, c + c)),
        _rel((1, ["beta1", "beta2"]), (-1, c + c)),
    ]
    for x, y in (("alpha2", "gamma1"), ("beta2", "gamma1"), (c[-1], "alpha1"), (c[-1], "beta1"),
                 ("alpha2", "beta1"), ("beta2", "alpha1")):
        rels.append(_mono([x, y]))
    for j in range(2, n):
        rels.append(_mono(_seq("gamma", j, n) + c + _seq("gamma", 1, j)))
    return _finish(q, rels, FamilySpec("Gamma", (n,)), field, cap)


def algebra_Tpqr(p: int, q: int, r: int, field: ScalarField = QQ, cap: int = 40) -> BoundQuiverAlgebra:
    _check(2 <= p <= q <= r, "T(p,q,r) needs 2 <= p <= q <= r")
    a, b, c = _seq("alpha", 1, p), _seq("beta", 1, q), _seq("gamma", 1, r)
    rels = [_rel((1, a), (-1, b)), _rel((1, a), (-1, c))]
    for x, y in ((a[-1], "gamma1"), (b[-1], "gamma1"), (c[-1], "alpha1"), (c[-1], "beta1"),
                 (a[-1], "beta1"), (b[-1], "alpha1")):
        rels.append(_mono([x, y]))
    for name, length in (("alpha", p), ("beta", q), ("gamma", r)):
        for i in range(2, length):
            rels.append(_mono(_seq(name, i, length) + _seq(name, 1, i)))
    return _finish(delta_quiver(p, q, r), rels, FamilySpec("Tpqr", (p, q, r)), field, cap)


def sigma_quiver(p: int, q: int) -> Quiver:
    inner_a, arr_a = _cycle("A", "alpha", p, "0", "00")
    inner_b, arr_b = _cycle("B", "beta", q, "0", "00")
    arrows = arr_a + arr_b + [Arrow("gamma", "00", "0"), Arrow("sigma", "00", "0")]
    return Quiver(tuple(["0", "00"] + inner_a + inner_b), tuple(arrows))


def algebra_Tpq(p: int, q: int, field: ScalarField = QQ, cap: int = 30) -> BoundQuiverAlgebra:
    _check(1 <= p <= q, "T(p,q) needs 1 <= p <= q")
    a, b = _seq("alpha", 1, p), _seq("beta", 1, q)
    rels = [
        _rel((1, a + ["gamma"]), (-1, b + ["sigma"])),
        _rel((1, ["gamma"] + a), (-1, ["sigma"] + b)),
        _mono([a[-1], "sigma"]), _mono(["sigma", "alpha1"]), _mono([b[-1], "gamma"]), _mono(["gamma", "beta1"]),
    ]
    for i in range(2, p):
        rels.append(_mono(_seq("alpha", i, p) + ["gamma"] + _seq("alpha", 1, i)))
    for j in range(2, q):
        rels.append(_mono(_seq("beta", j, q) + ["sigma"] + _seq("beta", 1, j)))
    return _finish(sigma_quiver(p, q), rels, FamilySpec("Tpq", (p, q)), field, cap)


def theta_quiver(r: int) -> Quiver:
    inner_c, arr_c = _cycle("C", "gamma", r)
    # sigma2 ends where gamma2 ends: C2 for r >= 3, the hub for r = 2
    end = "C2" if r >= 3 else "0"
    arrows = [Arrow("alpha1", "0", "A1"), Arrow("alpha2", "A1", "0"),
              Arrow("beta1", "0", "B1"), Arrow("beta2", "B1", "0")] + arr_c + [
        Arrow("sigma1", "0", "S1"), Arrow("sigma2", "S1", end)]
    return Quiver(tuple(["0", "A1", "B1"] + inner_c + ["S1"]), tuple(arrows))


def algebra_T22rStar(r: int, field: ScalarField = QQ, cap: int = 30) -> BoundQuiverAlgebra:
    """T(2,2,r)*.

    Two relations are added to the listed ones.  ``sigma1 sigma2 = gamma1
    gamma2`` makes the two parallel routes from the hub agree; without it
    the cycle sigma1 sigma2 gamma3...gamma_r is not nilpotent.  For r = 2,
    where sigma2 returns to the hub, ``sigma2 alpha1 = sigma2 beta1 = 0``
    complete relation (ii) the same way gamma_r does.
    """
    _check(r >= 2, "T(2,2,r)* needs r >= 2")
    c = _seq("gamma", 1, r)
    rels = [
        _rel((1, ["alpha1", "alpha2"]), (-1, ["beta1", "beta2"])),
        _rel((1, ["alpha1", "alpha2"]), (-1, c)),
        _rel((1, ["sigma1", "sigma2"]), (-1, ["gamma1", "gamma2"])),
    ]
    zero = [(c[-1], "alpha1"), ("beta2", "alpha1"), (c[-1], "beta1"), ("alpha2", "beta1"),
            ("alpha2", "gamma1"), ("alpha2", "sigma1"), ("beta2", "gamma1"), ("beta2", "sigma1")]
    if r == 2:
        zero += [("sigma2", "alpha1"), ("sigma2", "beta1")]
    for x, y in zero:
        rels.append(_mono([x, y]))
    rels.append(_mono(["alpha2", "alpha1", "alpha2"]))
    rels.append(_mono(["beta2", "beta1", "beta2"]))
    rels.append(_mono(_seq("gamma", 2, r) + ["sigma1"]))
    rels.append(_mono(["sigma2"] + _seq("gamma", 3, r) + ["gamma1"]))
    for k in range(3, r):
        rels.append(_mono(_seq("gamma", k, r) + _seq("gamma", 1, k)))
    return _finish(theta_quiver(r), rels, FamilySpec("T22rStar", (r,)), field, cap)


def algebra_Omega(n: int, field: ScalarField = QQ, cap: int = 30) -> BoundQuiverAlgebra:
    _check(n >= 1, "Omega(n) needs n >= 1")
    b = _seq("beta", 1, n)
    rels = [
        _rel((1, ["alpha1"] + b), (1, b + ["alpha1"])),
        _rel((1, ["alpha1", "alpha1"]), (-1, ["alpha1"] + b)),
        _mono([b[-1], "beta1"]),
    ]
    for k in range(2, n):
        rels.append(_mono(_seq("beta", k, n) + ["alpha1"] + _seq("beta", 1, k)))
    return _finish(delta_quiver(1, n), rels, FamilySpec("Omega", (n,)), field, cap)


def preprojective_A(rank: int, field: ScalarField = QQ, cap: int = 30) -> BoundQuiverAlgebra:
    """Double of the linear A_rank quiver with the mesh relations."""
    _check(rank >= 1, "preprojective algebra needs rank >= 1")
    vertices = tuple(str(i) for i in range(1, rank + 1))
    arrows = []
    for i in range(1, rank):
        arrows.append(Arrow(f"a{i}", str(i), str(i + 1)))
        arrows.append(Arrow(f"b{i}", str(i + 1), str(i)))
    rels = []
    for i in range(1, rank + 1):
        terms = []
        if i < rank:
            terms.append((1, [f"a{i}", f"b{i}"]))
        if i > 1:
            terms.append((1, [f"b{i-1}", f"a{i-1}"]))
        if terms:
            rels.append(_rel(*terms))
    return _finish(Quiver(vertices, tuple(arrows)), rels, FamilySpec("PreprojA", (rank,)), field, cap)


def build_family(spec: FamilySpec, field: ScalarField = QQ, cap: int | None = None) -> BoundQuiverAlgebra:
    builders = {
        "Apq": (algebra_Apq, 2), "Lambda": (algebra_Lambda, 1), "Gamma": (algebra_Gamma, 1),
        "Tpqr": (algebra_Tpqr, 3), "Tpq": (algebra_Tpq, 2), "T22rStar": (algebra_T22rStar, 1),
        "Omega": (algebra_Omega, 1), "PreprojA": (preprojective_A, 1),
    }
    if spec.family not in builders:
        raise ParameterOutOfRange(f"unknown family {spec.family!r}; expected one of {', '.join(FAMILIES)}")
    fn, arity = builders[spec.family]
    if len(spec.params) != arity:
        raise ParameterOutOfRange(f"{spec.family} takes {arity} parameter(s)")
    kw = {"field": field}
    if cap is not None:
        kw["cap"] = cap
    return fn(*spec.params, **kw)


# ------------------------------------------------------------ small helpers


def path_algebra(q: Quiver, field: ScalarField = QQ, name: str | None = None) -> BoundQuiverAlgebra:
    return BoundQuiverAlgebra(q, [], field, name=name)


def linear_A(n: int, field: ScalarField = QQ) -> BoundQuiverAlgebra:
    """Path algebra of 1 -> 2 -> ... -> n."""
    vs = tuple(str(i) for i in range(1, n + 1))
    arrows = tuple(Arrow(f"a{i}", str(i), str(i + 1)) for i in range(1, n))
    return path_algebra(Quiver(vs, arrows), field, name=f"kA{n}")


def dual_numbers(field: ScalarField = QQ) -> BoundQuiverAlgebra:
    """k[x]/(x^2) as a one-loop bound quiver algebra."""
    q = Quiver(("1",), (Arrow("x", "1", "1"),))
    return BoundQuiverAlgebra(q, [_mono(["x", "x"])], field, name="k[x]/x^2")


def star_D4(field: ScalarField = QQ) -> BoundQuiverAlgebra:
    """Path algebra of the four-subspace quiver with all arrows leaving the centre."""
    q = Quiver(("c", "1", "2", "3", "4"), tuple(Arrow(f"x{i}", "c", str(i)) for i in range(1, 5)))
    return path_algebra(q, field, name="kD4~")


def kronecker(field: ScalarField = QQ) -> BoundQuiverAlgebra:
    q = Quiver(("1", "2"), (Arrow("x", "1", "2"), Arrow("y", "1", "2")))
    return path_algebra(q, field, name="Kronecker")

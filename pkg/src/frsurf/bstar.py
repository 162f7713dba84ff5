"""Certificate pipeline for global F-regularity of klt standard germs.

From a klt pair with standard coefficients and -(K+B) nef over the base the
pipeline produces a checkable certificate chain: minimal complement Bc,
chain extraction, the coefficient surgery that replaces m/N by (m-1)/(N-1)
along a non-exceptional chain (plt case with an exceptional center) or the
convex mix with the trivial-pairing solution (non-plt case), then the three
hypotheses -- anti-nefness of K + B*, the sandwich Bc >= B* >= B with
(graph, B*) plt, and F-regularity of the different on the center -- are
verified and the monomial test supplies the final witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .complements import minimal_complement, ComplementHypothesisError
from .fedder import (
    FRegVerdict,
    P1Pair,
    fedder_exponents,
    is_globally_F_regular,
    verify_witness,
)
from .graphs import (
    GraphError,
    LogPair,
    anti_nef_over_base,
    canonical_dot,
    classify,
    diff_on_component,
    dot_against_exceptionals,
    intersection_matrix,
    pullback_coefficients,
    _solve_linear,
)
from .padic import is_prime
from .rationals import format_rational, is_standard, std_replace


class PipelineError(RuntimeError):
    """Staged diagnostic: every failure names its stage and kind."""

    def __init__(self, stage: str, kind: str, message: str):
        self.stage = stage
        self.kind = kind  # "hypothesis" | "structure" | "search" | "inconclusive"
        super().__init__(f"[{stage}] {message}")


@dataclass(frozen=True)
class NonPltSurgery:
    center: str
    gamma_prime: tuple[str, ...]
    bsharp: dict[str, Fraction]
    bstar: dict[str, Fraction]
    epsilon: Fraction
    epsilon_max: Fraction


@dataclass(frozen=True)
class PfregReport:
    clauses: dict[str, bool]
    anchors: tuple
    values: tuple[Fraction, ...]
    verdict: FRegVerdict

    @property
    def passed(self) -> bool:
        return all(self.clauses.values())


@dataclass(frozen=True)
class GfrCertificate:
    case: str  # "plt" | "non_plt"
    level: int
    center: str
    gamma0: tuple[str, ...]
    gamma_prime: tuple[str, ...]
    bc: dict[str, Fraction]
    bstar: dict[str, Fraction]
    epsilon: Fraction | None
    diff: tuple[Fraction, ...]
    diff_anchors: tuple
    fedder: FRegVerdict
    prime: int
    e_max: int


def reduced_chain(graph, bc) -> list[str]:
    """The coefficient-1 vertices, verified to form a simple chain.

    Returned end to end, smaller end id first.
    """
    ones = sorted(v for v in graph.ids if Fraction(bc[v]) == 1)
    if not ones:
        raise PipelineError("reduced-chain", "structure", "no coefficient-1 vertex")
    one_set = set(ones)
    deg = {v: 0 for v in ones}
    n_edges = 0
    for u, w, _m in graph.edges():
        if u in one_set and w in one_set:
            deg[u] += 1
            deg[w] += 1
            n_edges += 1
    if n_edges != len(ones) - 1 or any(d > 2 for d in deg.values()):
        raise PipelineError(
            "reduced-chain",
            "structure",
            "coefficient-1 locus is not a simple chain: " + ", ".join(ones),
        )
    if len(ones) == 1:
        return ones
    ends = sorted(v for v, d in deg.items() if d <= 1)
    if len(ends) != 2:
        raise PipelineError(
            "reduced-chain", "structure", "coefficient-1 locus is disconnected or cyclic"
        )
    chain = [ends[0]]
    prev = None
    while len(chain) < len(ones):
        nxt = [
            n
            for n, _m in graph.neighbors(chain[-1])
            if n in one_set and n != prev and n not in chain
        ]
        if len(nxt) != 1:
            raise PipelineError(
                "reduced-chain", "structure", "coefficient-1 locus is disconnected"
            )
        prev = chain[-1]
        chain.append(nxt[0])
    return chain


def find_nonexceptional_chain(pair: LogPair, bc, center: str, avoid=()) -> list[str]:
    """Lexicographically least path from a neighbor of the center through
    Supp(Bc - B) to a non-exceptional vertex, interior vertices exceptional.

    Mirrors the connected-component argument: the component of the support
    through the center must reach a non-exceptional curve whenever -(K+B)
    is nef over the base; if no path exists the input violates that
    hypothesis and a diagnostic is raised.
    """
    graph = pair.graph
    if Fraction(bc[center]) != 1:
        raise PipelineError(
            "chain-search", "hypothesis", f"center {center!r} must carry coefficient 1"
        )
    blocked = set(avoid) | {center}
    support = {
        v
        for v in graph.ids
        if Fraction(bc[v]) > pair.coeff[v] and v not in blocked
    }

    def dfs(path):
        v = path[-1]
        if not graph.vertex(v).exceptional:
            return path
        for nbr, _m in graph.neighbors(v):
            if nbr in support and nbr not in path:
                found = dfs(path + [nbr])
                if found is not None:
                    return found
        return None

    for nbr, _m in graph.neighbors(center):
        if nbr in support:
            found = dfs([nbr])
            if found is not None:
                return found
    raise PipelineError(
        "chain-search",
        "hypothesis",
        f"no non-exceptional chain through Supp(Bc - B) leaves {center!r}; "
        "such germs violate the nef-over-base hypothesis",
    )


def construct_bstar_plt(bc, level: int, gamma0) -> dict[str, Fraction]:
    """Replace each chain coefficient m/level by (m-1)/(level-1), rest unchanged."""
    if level < 2:
        raise PipelineError("surgery", "structure", "surgery needs level >= 2")
    out = {v: Fraction(c) for v, c in bc.items()}
    for v in gamma0:
        scaled = out[v] * level
        if scaled.denominator != 1:
            raise PipelineError(
                "surgery",
                "structure",
                f"{v!r} carries {format_rational(out[v])}, not on the 1/{level} grid",
            )
        out[v] = std_replace(int(scaled), level)
    return out


def _chain_with_nonexceptional_end(pair: LogPair, bc, gamma: list[str]):
    """Orient/extend the reduced chain so it ends at a non-exceptional curve.

    Returns the full path; the opposite end becomes the center (when that
    end is exceptional this is exactly the forced re-choice, otherwise it
    is the deterministic pick among the allowed ones).
    """
    graph = pair.graph
    ends = [gamma[0], gamma[-1]] if len(gamma) > 1 else [gamma[0]]
    for u in ends:
        if not graph.vertex(u).exceptional:
            oriented = gamma if u == gamma[-1] else list(reversed(gamma))
            return oriented
        try:
            ext = find_nonexceptional_chain(pair, bc, u, avoid=set(gamma) - {u})
        except PipelineError:
            continue
        oriented = gamma if u == gamma[-1] else list(reversed(gamma))
        return oriented + ext
    raise PipelineError(
        "chain-extension",
        "hypothesis",
        "the coefficient-1 chain admits no non-exceptional extension inside Supp(Bc - B)",
    )


def construct_bstar_nonplt(pair: LogPair, bc) -> NonPltSurgery:
    """Trivial-pairing solve off the center, then a strictly interior convex mix.

    Writes Bc = B' + B'' with B' supported on the chain minus the center,
    solves (K + B'' + sum a_i C_i) . C_i = 0 on its exceptional part, forms
    Bsharp from the solution (zero on its non-exceptional part), checks
    K + Bsharp pairs nonpositively with every exceptional curve, and mixes
    B* = (1-eps) Bc + eps Bsharp at eps = eps_max / 2, where eps_max is the
    exact largest value keeping B* >= B componentwise and (graph, B*) plt.
    """
    graph = pair.graph
    b = pair.coeff
    gamma = reduced_chain(graph, bc)
    path = _chain_with_nonexceptional_end(pair, bc, gamma)
    center = path[0]
    gamma_prime = tuple(path[1:])
    if not gamma_prime:
        raise PipelineError(
            "nonplt-split", "structure", "chain minus the center is empty"
        )
    gp = set(gamma_prime)
    b2 = {v: (Fraction(0) if v in gp else Fraction(bc[v])) for v in graph.ids}
    exc_gp = sorted(v for v in gamma_prime if graph.vertex(v).exceptional)
    m = intersection_matrix(graph, exc_gp)
    rhs = []
    for j in exc_gp:
        val = -Fraction(canonical_dot(graph, j)) - b2[j] * Fraction(graph.vertex(j).self_int)
        for nbr, mult in graph.neighbors(j):
            val -= b2[nbr] * mult
        rhs.append(val)
    solved = dict(zip(exc_gp, _solve_linear(m, rhs))) if exc_gp else {}

    bsharp = dict(b2)
    for v, val in solved.items():
        bsharp[v] = val
    dots = dot_against_exceptionals(graph, bsharp)
    if not anti_nef_over_base(dots):
        bad = sorted(j for j, v in dots.items() if v > 0)
        raise PipelineError(
            "nonplt-solve",
            "structure",
            "K + Bsharp pairs positively against " + ", ".join(bad),
        )

    # eps bounds: dominance B* >= B, coefficients <= 1, and solved b < 1,
    # each affine in eps.
    direction = {v: bsharp[v] - Fraction(bc[v]) for v in graph.ids}
    bounds = [Fraction(1)]
    for v in graph.ids:
        d = direction[v]
        if d < 0:
            bounds.append((Fraction(bc[v]) - b[v]) / -d)
        elif d > 0:
            room = 1 - Fraction(bc[v])
            if room <= 0:
                raise PipelineError(
                    "epsilon", "structure", f"coefficient at {v!r} cannot grow past 1"
                )
            bounds.append(room / d)
    b0 = pullback_coefficients(pair.with_coeff(bc)).b
    try:
        b1 = pullback_coefficients(pair.with_coeff(bsharp)).b
    except GraphError as exc:
        raise PipelineError("epsilon", "structure", str(exc))
    for j in graph.exceptional_ids:
        slope = b1[j] - b0[j]
        if b0[j] >= 1:
            if b0[j] > 1 or slope >= 0:
                raise PipelineError(
                    "epsilon",
                    "structure",
                    f"solved coefficient at {j!r} cannot drop below 1",
                )
        elif slope > 0:
            bounds.append((1 - b0[j]) / slope)
    eps_max = min(bounds)
    if eps_max <= 0:
        raise PipelineError("epsilon", "structure", "no room for a positive mix")
    eps = eps_max / 2
    bstar = {v: Fraction(bc[v]) + eps * direction[v] for v in graph.ids}
    cls = classify(pair.with_coeff(bstar))
    if not cls.is_plt:
        raise PipelineError(
            "epsilon",
            "structure",
            f"mixed boundary classifies {cls.label}, not plt, at eps={eps}",
        )
    return NonPltSurgery(
        center=center,
        gamma_prime=gamma_prime,
        bsharp=bsharp,
        bstar=bstar,
        epsilon=eps,
        epsilon_max=eps_max,
    )


def verify_pfreg(pair: LogPair, bc, bstar, center: str, p: int, e_max: int) -> PfregReport:
    """The three certificate clauses, each checked independently.

    (1) K + B* pairs nonpositively with every exceptional curve and
        Bc >= B* >= B componentwise; (2) (graph, B*) is plt; (3) the
        different of B* along the center is globally F-regular.
    """
    graph = pair.graph
    b = pair.coeff
    clauses: dict[str, bool] = {}
    dots = dot_against_exceptionals(graph, bstar)
    sandwich = all(
        Fraction(bc[v]) >= Fraction(bstar[v]) >= b[v] for v in graph.ids
    )
    clauses["nef_and_sandwich"] = anti_nef_over_base(dots) and sandwich
    spair = pair.with_coeff(bstar)
    clauses["plt"] = classify(spair).is_plt
    anchors = diff_on_component(spair, center)
    values = tuple(val for _a, val in anchors)
    nonzero = [val for val in values if val != 0]
    if len(nonzero) > 3:
        raise PipelineError(
            "different",
            "structure",
            f"{len(nonzero)} nonzero anchors at {center!r}; only the reduction "
            "of a four-point half-coefficient boundary to three points is supported",
        )
    if any(val >= 1 for val in nonzero):
        raise PipelineError(
            "different",
            "structure",
            f"anchor coefficient >= 1 at {center!r}: the mixed boundary is not plt there",
        )
    verdict = is_globally_F_regular(P1Pair.from_coeffs(nonzero), p, e_max)
    clauses["f_regular"] = verdict.is_regular
    return PfregReport(
        clauses=clauses, anchors=tuple(anchors), values=values, verdict=verdict
    )


def gfr_certificate(pair: LogPair, p: int, e_max: int = 4) -> GfrCertificate:
    """Run the full pipeline; every failure raises a staged diagnostic."""
    if not (isinstance(p, int) and is_prime(p) and p > 5):
        raise PipelineError(
            "hypotheses", "hypothesis", f"characteristic must be a prime > 5, got {p}"
        )
    failures = []
    try:
        cls = classify(pair)
        if not cls.is_klt:
            failures.append(f"pair classifies {cls.label}, not klt")
    except GraphError as exc:
        raise PipelineError("hypotheses", "hypothesis", str(exc))
    nonstd = sorted(v for v, c in pair.coeff.items() if not is_standard(c))
    if nonstd:
        failures.append(
            "non-standard coefficients at "
            + ", ".join(f"{v}={format_rational(pair.coeff[v])}" for v in nonstd)
        )
    dots = dot_against_exceptionals(pair.graph, pair.coeff)
    if not anti_nef_over_base(dots):
        failures.append("-(K+B) is not nef over the base")
    if failures:
        raise PipelineError("hypotheses", "hypothesis", "; ".join(failures))

    try:
        comp = minimal_complement(pair)
    except ComplementHypothesisError as exc:
        raise PipelineError("complement", "hypothesis", str(exc))
    if comp is None:
        raise PipelineError(
            "complement",
            "search",
            "no complement of level 1, 2, 3, 4 or 6 on the coefficient grid",
        )
    bc = comp.coeffs
    level = comp.level

    if comp.plt_case:
        ones = sorted(v for v, c in bc.items() if c == 1)
        if len(ones) != 1:
            raise PipelineError(
                "plt-center",
                "structure",
                f"plt complement with {len(ones)} coefficient-1 vertices",
            )
        center = ones[0]
        if pair.graph.vertex(center).exceptional:
            gamma0 = tuple(find_nonexceptional_chain(pair, bc, center))
            bstar = construct_bstar_plt(bc, level, gamma0)
        else:
            # The center survives as a curve germ: the complement itself
            # already satisfies all three clauses (its anchors stay < 1 by
            # plt-ness), so no surgery is needed.
            gamma0 = ()
            bstar = {v: Fraction(c) for v, c in bc.items()}
        case = "plt"
        gamma_prime: tuple[str, ...] = ()
        epsilon = None
    else:
        surgery = construct_bstar_nonplt(pair, bc)
        center = surgery.center
        gamma0 = ()
        gamma_prime = surgery.gamma_prime
        bstar = surgery.bstar
        epsilon = surgery.epsilon
        case = "non_plt"

    report = verify_pfreg(pair, bc, bstar, center, p, e_max)
    if not report.passed:
        failed = sorted(name for name, ok in report.clauses.items() if not ok)
        if failed == ["f_regular"] and report.verdict.status == "inconclusive":
            raise PipelineError(
                "fedder",
                "inconclusive",
                f"monomial test exhausted e <= {e_max} at p = {p}",
            )
        raise PipelineError(
            "pfreg", "structure", "failed clauses: " + ", ".join(failed)
        )
    return GfrCertificate(
        case=case,
        level=level,
        center=center,
        gamma0=gamma0,
        gamma_prime=gamma_prime,
        bc={v: Fraction(c) for v, c in bc.items()},
        bstar={v: Fraction(c) for v, c in bstar.items()},
        epsilon=epsilon,
        diff=report.values,
        diff_anchors=report.anchors,
        fedder=report.verdict,
        prime=p,
        e_max=e_max,
    )


def certificate_to_payload(cert: GfrCertificate) -> dict:
    """JSON-ready form; `certificate_from_payload` restores the certificate."""
    fv = cert.fedder
    fedder_payload = {"status": fv.status, "toric": fv.toric}
    if fv.certificate is not None:
        fc = fv.certificate
        fedder_payload["certificate"] = {
            "p": fc.p,
            "e": fc.e,
            "a": list(fc.a),
            "witness": list(fc.witness),
        }
    if fv.reason:
        fedder_payload["reason"] = fv.reason
    if fv.e_tried is not None:
        fedder_payload["e_max_tried"] = fv.e_tried
    return {
        "case": cert.case,
        "level": cert.level,
        "center": cert.center,
        "gamma0": list(cert.gamma0),
        "gamma_prime": list(cert.gamma_prime),
        "bc": {v: format_rational(c) for v, c in sorted(cert.bc.items())},
        "bstar": {v: format_rational(c) for v, c in sorted(cert.bstar.items())},
        "epsilon": format_rational(cert.epsilon) if cert.epsilon is not None else None,
        "diff": [format_rational(v) for v in cert.diff],
        "diff_anchors": [[list(a), format_rational(v)] for a, v in cert.diff_anchors],
        "fedder": fedder_payload,
        "p": cert.prime,
        "e_max": cert.e_max,
    }


def certificate_from_payload(payload: dict) -> GfrCertificate:
    from .fedder import FRegCertificate
    from .rationals import parse_rational

    fp = payload["fedder"]
    fc = None
    if "certificate" in fp:
        c = fp["certificate"]
        fc = FRegCertificate(
            p=c["p"], e=c["e"], a=tuple(c["a"]), witness=tuple(c["witness"])
        )
    verdict = FRegVerdict(
        status=fp["status"],
        certificate=fc,
        reason=fp.get("reason"),
        e_tried=fp.get("e_max_tried"),
        toric=fp.get("toric", False),
    )
    eps = payload.get("epsilon")
    return GfrCertificate(
        case=payload["case"],
        level=payload["level"],
        center=payload["center"],
        gamma0=tuple(payload["gamma0"]),
        gamma_prime=tuple(payload["gamma_prime"]),
        bc={v: parse_rational(c) for v, c in payload["bc"].items()},
        bstar={v: parse_rational(c) for v, c in payload["bstar"].items()},
        epsilon=parse_rational(eps) if eps is not None else None,
        diff=tuple(parse_rational(v) for v in payload["diff"]),
        diff_anchors=tuple(
            (tuple(a), parse_rational(v)) for a, v in payload["diff_anchors"]
        ),
        fedder=verdict,
        prime=payload["p"],
        e_max=payload["e_max"],
    )


def reverify_certificate(pair: LogPair, cert: GfrCertificate) -> list[str]:
    """Re-check a certificate from scratch with graph and monomial primitives only.

    Returns the list of discrepancies (empty means the certificate stands).
    No state from the construction phase is reused.
    """
    problems = []
    graph = pair.graph
    b = pair.coeff
    bc = cert.bc
    bs = cert.bstar

    if cert.level not in (1, 2, 3, 4, 6):
        problems.append(f"level {cert.level} outside {{1,2,3,4,6}}")
    if set(bc) != set(graph.ids) or set(bs) != set(graph.ids):
        return problems + ["coefficient vectors do not cover the graph"]
    for v in graph.ids:
        if not Fraction(bc[v]) >= b[v]:
            problems.append(f"Bc < B at {v}")
        if (cert.level * Fraction(bc[v])).denominator != 1:
            problems.append(f"level * Bc not integral at {v}")
        if cert.level * Fraction(bc[v]) < math.floor((cert.level + 1) * b[v]):
            problems.append(f"floor bound fails at {v}")
    dots = dot_against_exceptionals(graph, bc)
    if any(val != 0 for val in dots.values()):
        problems.append("K + Bc is not numerically trivial on the exceptional locus")
    cls_bc = classify(pair.with_coeff(bc))
    if not (cls_bc.is_lc and not cls_bc.is_klt):
        problems.append(f"pair with Bc classifies {cls_bc.label}, need lc not klt")
    if (cert.case == "plt") != cls_bc.is_plt:
        problems.append("recorded case disagrees with the classification")

    if Fraction(bc[cert.center]) != 1 or Fraction(bs[cert.center]) != 1:
        problems.append("center does not carry coefficient 1")
    if not anti_nef_over_base(dot_against_exceptionals(graph, bs)):
        problems.append("K + B* pairs positively against some exceptional curve")
    for v in graph.ids:
        if not Fraction(bc[v]) >= Fraction(bs[v]) >= b[v]:
            problems.append(f"sandwich Bc >= B* >= B fails at {v}")
    if not classify(pair.with_coeff(bs)).is_plt:
        problems.append("pair with B* is not plt")

    anchors = diff_on_component(pair.with_coeff(bs), cert.center)
    values = tuple(val for _a, val in anchors)
    if values != cert.diff:
        problems.append("recorded different disagrees with the recomputation")
    nonzero = [val for val in values if val != 0]
    verdict = cert.fedder
    if not verdict.is_regular:
        problems.append("stored verdict is not regular")
    elif verdict.certificate is not None:
        fc = verdict.certificate
        p1 = P1Pair.from_coeffs(nonzero)
        if fedder_exponents(p1, fc.p, fc.e) != fc.a:
            problems.append("stored exponents disagree with the different")
        if not verify_witness(fc.a, fc.witness[0], fc.witness[1], fc.p, fc.e):
            problems.append("stored witness monomial fails verification")
    else:
        if len(nonzero) > 2:
            problems.append("toric verdict with more than two marked points")
    return problems

"""Plain-text snapshot reports.

Each generator returns a deterministic UTF-8 string with LF line endings;
`write_all` drops them into a directory.  These tables are the package's
record of every documented discrepancy and of the verdicts the source
material leaves open (n=1 degeneracy, odd-n grading, the zero-divisor
claim, the almost-bialgebra relation table, cross-symmetry coherence).
Their content is the deliverable: a fail row here is a finding, not a bug.
"""

from __future__ import annotations

from pathlib import Path

from .algebra import (Element, N2_BASIS, check_representation, grading_check,
                      left_mul_matrix, mul, obstruction, annihilator,
                      Subspace)
from .category import cocycle_from_algebra, check_regular_cocycle
from .rewrite import RewriteSystem
from .tensor import (bialgebra_candidates, check_almost_bialgebra,
                     check_coalgebra_obstruction, check_coassociativity,
                     check_dual_pairing_identity, check_regular_module,
                     dual_comultiplication, dual_system, SIGN_CONVENTIONS)
from .wick import (ConjugatedPair, CrossSymmetry, WickElement,
                   check_coherence, check_regular_cross_symmetry,
                   wick_mul_regular)


def confluence_report() -> str:
    lines = ["critical-pair analysis of the generator presentations", ""]
    for n in range(1, 5):
        sys = RewriteSystem(n)
        rep = sys.check_local_confluence()
        lines.append(rep.render())
        if n == 1:
            lines.append(
                "  note: for n=1 the square rule and the cyclic rule overlap "
                "on the same word 11 with")
            lines.append(
                "  irreconcilable reducts 0 and 1, so the one-generator "
                "quotient (which forces the")
            lines.append(
                "  generator itself to vanish) is not seen by rewriting "
                "alone.")
        lines.append("")
    lines.append("normal-form counts by word length")
    for n in range(2, 5):
        sys = RewriteSystem(n)
        counts = []
        for length in range(0, 7):
            words = sys.enumerate_normal_forms(length)
            counts.append(sum(1 for w in words if len(w) == length))
        lines.append(f"  n={n}: " + " ".join(str(c) for c in counts))
    lines.append("")
    return "\n".join(lines) + "\n"


def representation_report() -> str:
    lines = ["left/right multiplication operator laws "
             "(L_i L_j = L_ij, R_i R_j = R_ji)", ""]
    for n, deg in ((1, 3), (2, 3), (3, 4)):
        lines.append(check_representation(n, deg).render())
    lines.append("")
    return "\n".join(lines) + "\n"


def grading_report() -> str:
    lines = ["parity behaviour of the product", ""]
    for n in (2, 3):
        sys = RewriteSystem(n)
        words = [w for w in sys.enumerate_normal_forms(3) if len(w)]
        pair_bad = []
        triple_bad = []
        for u in words:
            for v in words:
                a = Element.from_word(sys, u)
                b = Element.from_word(sys, v)
                rep = grading_check(a, b)
                if not rep.product_ok:
                    pair_bad.append(
                        f"  {u.to_text()} * {v.to_text()} = {mul(a, b)} "
                        f"(expected grade {(u.parity + v.parity) % 2})")
                if rep.triple_checked and not rep.triple_ok:
                    triple = mul(mul(a, b), a)
                    triple_bad.append(
                        f"  {u.to_text()} * {v.to_text()} * {u.to_text()} "
                        f"= {triple} (expected odd)")
        lines.append(f"n={n}: pairs={len(words) ** 2} "
                     f"pair_violations={len(pair_bad)} "
                     f"odd_triple_violations={len(triple_bad)}")
        lines.extend(pair_bad)
        if triple_bad:
            lines.append("  odd*odd*odd closure failures:")
            lines.extend(triple_bad)
        if n % 2 == 1:
            lines.append(
                f"  note: the cyclic rule shortens words by n={n}, an odd "
                "amount, so the Z2 grade of a")
            lines.append(
                "  product is not determined by the grades of its factors; "
                "the quotient is not Z2-graded.")
        lines.append("")
    return "\n".join(lines) + "\n"


def zero_divisor_report() -> str:
    sys = RewriteSystem(2)
    b = Element.from_coeffs(sys, (1, -1, -1, 0, 0))
    samples = [
        ("1", Element.unit(sys)),
        ("generic", Element.from_coeffs(sys, (1, 2, 3, 5, 7))),
        ("T1", Element.generator(sys, 1)),
        ("a0=0 family", Element.from_coeffs(sys, (0, 1, 1, 1, 1))),
    ]
    lines = ["claimed universal zero divisor b = 1 - T1 - T2", "",
             f"b = {b}", ""]
    for name, a in samples:
        ab = mul(a, b)
        ba = mul(b, a)
        lines.append(f"a ({name}) = {a}")
        lines.append(f"  a*b = {ab}   [zero: {str(ab.is_zero()).lower()}]")
        lines.append(f"  b*a = {ba}   [zero: {str(ba.is_zero()).lower()}]")
    lines.append("")
    lines.append("componentwise, a*b = a0 + (a1-a12-a0) T1 + (a2-a21-a0) T2"
                 " + (a12-a1) T1T2 + (a21-a2) T2T1,")
    lines.append("so a*b = 0 forces a0 = 0, a1 = a12 and a2 = a21: "
                 "b annihilates only that family, not every element.")
    lines.append("")
    generic = samples[1][1]
    lines.append(f"right annihilator of the generic sample "
                 f"(a0, D nonzero): dimension "
                 f"{len(annihilator(generic, 'right'))}")
    t1 = Element.generator(sys, 1)
    ann = annihilator(t1, "right")
    lines.append("right annihilator of T1:")
    for e in ann:
        lines.append(f"  {e}")
    lines.append("")
    return "\n".join(lines) + "\n"


def bialgebra_report() -> str:
    sys = RewriteSystem(2)
    lines = ["multiplicative consistency of Delta(T_i) = "
             "T_i (x) e_i + e_i (x) T_i", "",
             "relations checked: Delta(T1)^2 = 0, Delta(T2)^2 = 0,",
             "                   D1 D2 D1 = D1,  D2 D1 D2 = D2", ""]
    header = (f"{'candidate':<18} {'signs':<7} {'sq1':<5} {'sq2':<5} "
              f"{'121':<5} {'212':<5} ok")
    lines.append(header)
    passing = 0
    for name, gens in bialgebra_candidates(sys).items():
        for signs in SIGN_CONVENTIONS:
            rep = check_almost_bialgebra(gens, signs)
            passing += rep.ok
            row = (f"{name:<18} {signs:<7} "
                   f"{str(rep.square_zero[0]).lower():<5} "
                   f"{str(rep.square_zero[1]).lower():<5} "
                   f"{str(rep.cyclic[0]).lower():<5} "
                   f"{str(rep.cyclic[1]).lower():<5} "
                   f"{str(rep.ok).lower()}")
            lines.append(row)
    lines.append("")
    if passing:
        lines.append(f"{passing} of 8 candidate/convention combinations "
                     "satisfy all defining relations.")
    else:
        lines.append("no candidate satisfies all defining relations under "
                     "either sign convention; the displayed")
        lines.append("comultiplication does not extend multiplicatively to "
                     "the whole algebra as stated.")
    lines.append("")
    return "\n".join(lines) + "\n"


def psi_coherence_report() -> str:
    pair = ConjugatedPair()
    lines = ["cross-symmetry coherence (both laws, all splits, degree <= 2)",
             ""]
    for vacuum in ("unit", "idem"):
        psi = CrossSymmetry.regular(pair, vacuum)
        rep = check_coherence(psi, 2)
        lines.append(rep.render())
        value = psi.apply((1,), (1, 2))
        lines.append(f"  psi(X1 (x) T1 T2) = {value}")
        lines.append("")
    flip = check_coherence(CrossSymmetry.flip(pair), 2)
    lines.append(flip.render())
    lines.append("")
    return "\n".join(lines) + "\n"


def dual_comultiplication_report() -> str:
    theta = RewriteSystem(2)
    xi = dual_system()
    table = dual_comultiplication(theta, xi)
    lines = ["comultiplication transported through the reversal pairing", ""]
    for w in sorted(table, key=lambda w: w.sort_key()):
        lines.append(f"Delta({w.to_text('X')}) = {table[w]}")
    lines.append("")
    lines.append(f"coassociative: "
                 f"{str(check_coassociativity(table)).lower()}")
    for conv in ("straight", "flip"):
        ok = check_dual_pairing_identity(table, theta, xi, 2, conv)
        lines.append(f"pairing transport identity "
                     f"<Delta(w), u (x) v> = <w, uv> [{conv}]: "
                     f"{str(ok).lower()}")
    ok, witnesses = check_coalgebra_obstruction(table, xi)
    lines.append(f"coalgebra obstruction law Delta.e = (e (x) e).Delta: "
                 f"{str(ok).lower()}")
    if witnesses:
        lines.append("  fails at: " +
                     ", ".join(w.to_text("X") for w in witnesses))
    lines.append("")
    return "\n".join(lines) + "\n"


def wick_regular_report() -> str:
    pair = ConjugatedPair()
    psi = CrossSymmetry.regular(pair, "unit")

    def e_theta(a):
        return obstruction(a)

    def e_xi(a):
        return obstruction(a)

    lines = ["regular Wick structure with the obstruction map on both legs",
             ""]
    ok, witnesses = check_regular_cross_symmetry(psi, e_theta, e_xi, 2)
    lines.append(f"regular cross symmetry law "
                 f"(e (x) e).psi = psi.(e (x) e): {str(ok).lower()}")
    if witnesses:
        lines.append(f"  witnesses: {len(witnesses)}; first at " +
                     f"{witnesses[0][0].to_text('X')} (x) "
                     f"{witnesses[0][1].to_text('T')}")
    x = WickElement.single(pair, (1,), ())
    y = WickElement.single(pair, (), (1,))
    value = wick_mul_regular(x, y, psi, e_theta, e_xi)
    lines.append(f"regular Wick product (T1 (x) 1)(1 (x) X1) = {value}")
    lines.append("")

    sys = pair.theta
    basis = N2_BASIS
    space = Subspace("A", basis)
    action = {}
    for w in basis:
        _, m = left_mul_matrix(Element.from_word(sys, w), space, space)
        action[w] = m

    def e_module(vec):
        e = obstruction(Element(sys, dict(zip(basis, vec))))
        return tuple(e.coeff(w) for w in basis)

    ok, witnesses = check_regular_module(action, basis, 5,
                                         obstruction, e_module, sys)
    lines.append("module law rho.(e_A (x) e_M) = e_M.rho with M = A, "
                 "rho = multiplication,")
    lines.append(f"e_A = e_M = obstruction map: {str(ok).lower()}")
    if witnesses:
        shown = ", ".join(f"({w.to_text()}, {j})" for w, j in witnesses[:4])
        lines.append(f"  fails at {len(witnesses)} basis pairs, "
                     f"first: {shown}")
    identity_ok, _ = check_regular_module(action, basis, 5,
                                          lambda a: a, lambda v: v, sys)
    lines.append(f"same with identity obstruction maps: "
                 f"{str(identity_ok).lower()}")
    lines.append("")

    cocycle, trunc = cocycle_from_algebra(RewriteSystem(3), 4)
    verdict = check_regular_cocycle(cocycle)
    lines.append("n=3 truncated cocycle at degree 4: "
                 f"dims={list(trunc.dims)} pruned={len(trunc.removed)} "
                 f"regular={str(verdict.ok).lower()}")
    lines.append("")
    return "\n".join(lines) + "\n"


REPORTS = {
    "confluence.txt": confluence_report,
    "representation.txt": representation_report,
    "grading.txt": grading_report,
    "zero_divisor.txt": zero_divisor_report,
    "bialgebra.txt": bialgebra_report,
    "psi_coherence.txt": psi_coherence_report,
    "dual_comultiplication.txt": dual_comultiplication_report,
    "wick_regular.txt": wick_regular_report,
}


def write_all(outdir) -> list:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, make in REPORTS.items():
        path = out / name
        path.write_text(make(), encoding="utf-8", newline="\n")
        written.append(path)
    return written

"""Acceptance gate: every criterion at its stated range and tolerance.

Each test prints one [PASS]/[FAIL] line (run pytest with -s to see them
all); a failing criterion also fails its test with the recorded detail.
Everything here is exact arithmetic; the only tolerance anywhere is the
ratio-limit bound, which is itself derived, not tuned.
"""
from fractions import Fraction

from necklaces.analysis import (
    RationalGrid,
    classify_degree_monotonicity,
    negative_dip_probe,
    ratio_limit_check,
    scan_bracket_normalized,
    scan_derivative_positive,
    scan_normalized_increasing,
    verify_delta_factorizations,
)
from necklaces.cli import main
from necklaces.coeffs import jordan_gap, positivity_scan
from necklaces.necklace import (
    delta_factored,
    necklace_eval_int,
    shared_family,
    verify_bracket_product_rule,
    verify_product_rule,
)
from necklaces.numtheory import smallest_prime_factor
from necklaces.oracles import (
    build_field,
    census,
    count_lyndon,
    count_primitive_strings,
    max_degree_within_budget,
)


def report(number: int, title: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    line = f"[{status}] criterion {number}: {title}"
    if detail and not ok:
        line += f" -- {detail}"
    print(line)
    assert ok, detail or title


def test_criterion_01_census_formula_agreement():
    failures = []
    for p, m in ((2, 1), (3, 1), (2, 2), (5, 1)):
        rep = census(build_field(p, m), 9)
        if not rep.all_match:
            failures.append(f"q={rep.q}: {rep.rows()}")
        if rep.q == 5 and rep.brute_counts[8] != 217000:
            failures.append(f"q=5 degree 9 gave {rep.brute_counts[8]}")
    small_budget = 10**5  # q^n <= budget clause for the larger fields
    for p, m in ((7, 1), (2, 3), (3, 2)):
        q = p**m
        degree = max_degree_within_budget(q, small_budget)
        rep = census(build_field(p, m), degree, small_budget)
        if not rep.all_match:
            failures.append(f"q={q}: {rep.rows()}")
    report(1, "brute-force irreducible counts equal the formula", not failures, "; ".join(failures))


def test_criterion_02_lyndon_oracle_agreement():
    budget = 10**6
    checked = 0
    failures = []
    for x in range(1, 13):
        for n in range(1, 21):
            if x**n > budget:
                break
            lyndon = count_lyndon(n, x, budget=40 * budget)
            primitive = count_primitive_strings(n, x, budget=budget)
            formula = necklace_eval_int(n, x)
            if lyndon != formula:
                failures.append(f"lyndon({n},{x})={lyndon} != {formula}")
            if primitive != n * lyndon:
                failures.append(f"primitive({n},{x})={primitive} != {n}*{lyndon}")
            checked += 1
    report(
        2,
        f"Lyndon and primitive-string counts match the formula exactly ({checked} pairs)",
        not failures and checked > 60,
        "; ".join(failures[:4]),
    )


def test_criterion_03_product_rule_identities():
    failures = []
    for n in range(1, 31):
        if not verify_product_rule(n).passed:
            failures.append(f"product rule n={n}")
    for n in range(1, 21):
        for k in range(6):
            if not verify_bracket_product_rule(n, k).passed:
                failures.append(f"bracket rule n={n}, k={k}")
    report(3, "grid-complete product rules, n<=30 and (n<=20, k<=5)", not failures, "; ".join(failures[:4]))


def test_criterion_04_delta_factorizations_and_threshold():
    fam = shared_family()
    failures = []
    for n in range(2, 8):
        if fam.delta_poly(n) != delta_factored(n):
            failures.append(f"factorization mismatch at n={n}")
    if fam.delta_eval(3, 8) != 0:
        failures.append("gap at (n=3, x=8) is not zero")
    if not fam.delta_eval(3, 7) < 0:
        failures.append("gap at (n=3, x=7) is not negative")
    x = Fraction(8) + Fraction(1, 16)
    while x <= 12:
        for n in range(2, 26):
            if not fam.delta_eval(n, x) > 0:
                failures.append(f"gap not positive at n={n}, x={x}")
        x += Fraction(1, 16)
    report(4, "delta factorizations for n=2..7 and the x=8 infimum", not failures, "; ".join(failures[:4]))


def test_criterion_05_positivity_suite():
    failures = []
    rep = positivity_scan(40, 12, 12)
    if not rep.passed:
        failures.extend(w.location for w in rep.witnesses[:4])
    for n in range(2, 201):
        for k in range(21):
            if not jordan_gap(n, k) > 0:
                failures.append(f"jordan gap not positive at n={n}, k={k}")
    report(5, "moment vanishing/positivity statements (n<=40, k,r<=12) and gap positivity (n<=200, k<=20)",
           not failures, "; ".join(failures[:4]))


def test_criterion_06_degree_monotonicity_exceptions():
    xs = [Fraction(2), Fraction(9, 4), Fraction(5, 2), Fraction(11, 4), Fraction(3),
          Fraction(7, 2), Fraction(4), Fraction(17, 2)]
    failures = []
    for x in xs:
        rep = classify_degree_monotonicity(x, 30)
        if not rep.passed:
            failures.append(f"x={x}: {[w.location for w in rep.witnesses[:2]]}")
    fam = shared_family()
    if fam.eval_exact(2, 3) != fam.eval_exact(1, 3):
        failures.append("no equality at x=3, n=1")
    report(6, "strict growth in n except exactly (n=1, 2<=x<=3), equality at x=3",
           not failures, "; ".join(failures[:4]))


def test_criterion_07_ratio_limit():
    failures = []
    for x in (2, 3, 5):
        rep = ratio_limit_check(Fraction(x), 60)
        if not rep.passed:
            failures.append(f"x={x}: {[w.location for w in rep.witnesses[:2]]}")
    dev = abs(Fraction(necklace_eval_int(41, 2), necklace_eval_int(40, 2)) - 2)
    if not dev < Fraction(6, 100):
        failures.append(f"x=2, n=40 deviation {dev} not under 0.06")
    report(7, "|ratio - x| <= x/(n+1) + 8*x^(1-n/2) for x in {2,3,5}, 4<=n<=60",
           not failures, "; ".join(failures[:4]))


def test_criterion_08_monotonicity_certificates():
    fam = shared_family()
    grid = RationalGrid(Fraction(17, 16), 10, Fraction(1, 16))
    pts = grid.points()
    failures = []
    # growth certificates strictly positive on the grid
    for n in range(2, 41):
        cert = fam.growth_poly(n)
        for x in pts:
            if not cert(x) > 0:
                failures.append(f"certificate not positive at n={n}, x={x}")
                break
    # all derivatives strictly positive
    rep = scan_derivative_positive((1, 40), (1, 40), grid)
    if not rep.passed:
        failures.extend(w.location for w in rep.witnesses[:3])
    # normalized family strictly increasing across the grid
    rep = scan_normalized_increasing((2, 40), grid)
    if not rep.passed:
        failures.extend(w.location for w in rep.witnesses[:3])
    # bracket families: increasing up to the threshold, exact monomial constant above it
    for n in range(2, 41):
        p = smallest_prime_factor(n)
        for k in range(n + 1):
            rep = scan_bracket_normalized(n, k, grid)
            if not rep.passed:
                failures.append(f"bracket scan failed at n={n}, k={k} (threshold n/p={Fraction(n, p)})")
                break
    report(8, "certificate positivity plus grid growth for normalized and bracket families (n<=40)",
           not failures, "; ".join(failures[:4]))


def test_criterion_09_negative_dip_witnesses():
    fam = shared_family()
    failures = []
    for n in range(2, 31):
        x = negative_dip_probe(n)
        if not (0 < x < 1 and fam.eval_exact(n, x) < 0):
            failures.append(f"bad witness {x} at n={n}")
    report(9, "a rational witness in (0,1) with a negative value for every 2<=n<=30",
           not failures, "; ".join(failures[:4]))


def test_criterion_10_plot_data_reproduction(tmp_path, capsys):
    out = tmp_path / "curves.csv"
    code = main(
        ["plot-data", "--family", "M", "--n", "2..6", "--x-min", "1", "--x-max", "5",
         "--step", "1/64", "--output", str(out)]
    )
    capsys.readouterr()
    failures = []
    if code != 0:
        failures.append(f"exit code {code}")
    else:
        lines = out.read_text().splitlines()
        if lines[0] != "x,M_2,M_3,M_4,M_5,M_6":
            failures.append(f"header {lines[0]}")
        columns = list(zip(*(line.split(",") for line in lines[1:])))
        for idx, col in enumerate(columns[1:], start=2):
            values = [float(v.rstrip("…")) for v in col]
            if values[0] != 0.0:
                failures.append(f"column M_{idx} not zero at x=1")
            if not all(v > 0 for v in values[1:]):
                failures.append(f"column M_{idx} not positive for x>1")
            if not all(a < b for a, b in zip(values, values[1:])):
                failures.append(f"column M_{idx} not strictly increasing")
    report(10, "emitted curves vanish at 1, stay positive, and strictly increase on [1,5]",
           not failures, "; ".join(failures[:4]))

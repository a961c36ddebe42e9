import random
from fractions import Fraction as F

import pytest

from hyperlat import (
    GridFunction,
    HalfInt,
    OutOfWindow,
    PearsonWeight,
    SingularSummand,
    Window,
    WindowTooSmall,
    Y_n,
    apply_L,
    apply_L_star,
    gamma_ell_eta,
    generalized_solution,
    iterated_delta,
    iterated_nabla,
    lambda_n,
    nabla_k,
    pearson_weight,
    rho_k,
    rodrigues_polynomial,
    second_solution,
    sigma_of_s,
    sigma_star,
    solve,
    tau_of_s,
    weight_window_for,
)
S = HalfInt.from_int


@pytest.fixture
def weight(equation, window):
    return pearson_weight(equation, weight_window_for(5, window), window.start)


def test_Y_n_small_orders(equation, weight):
    win = Window(S(5), 6)
    y0 = Y_n(equation, weight, 0, win)
    assert y0 == weight.rho.restrict(win)
    y1 = Y_n(equation, weight, 1, win)
    for s in win.points():
        assert y1.value_at(s) == weight.value_at(s) * sigma_of_s(equation, s)


def test_Y_n_satisfies_first_order_equation(equation, weight):
    lat = equation.lattice
    for n in (1, 2, 3):
        win = Window(S(5), 7)
        product = Y_n(equation, weight, n, win)
        grad = nabla_k(lat, -n, product)
        for s in grad.points():
            nxn = lat.nabla_x(-n, s)
            rhs = ((sigma_of_s(equation, s - 1) - sigma_of_s(equation, s - n)) / nxn
                   + tau_of_s(equation, s - 1) * lat.nabla_x(-1, s) / nxn)
            assert sigma_of_s(equation, s - n) * grad.value_at(s) == rhs * product.value_at(s - 1)


def test_rodrigues_order_zero_is_one(equation, weight, window):
    report = rodrigues_polynomial(equation, weight, 0, window)
    assert report.solution.values == (F(1),) * window.length
    assert report.residual.is_zero()
    assert report.lam_n == 0


def test_rodrigues_order_one_is_tau(equation, weight, window):
    report = rodrigues_polynomial(equation, weight, 1, window)
    for s in window.points():
        assert report.solution.value_at(s) == tau_of_s(equation, s)


def test_rodrigues_residual_and_degree(equation, weight, window):
    for n in range(6):
        report = rodrigues_polynomial(equation, weight, n, window)
        assert report.kind == "polynomial"
        assert report.residual.window == window
        assert report.is_exact_solution()
        assert iterated_delta(equation.lattice, 0, n + 1, report.solution).is_zero()
        lowered = iterated_delta(equation.lattice, 0, n, report.solution)
        assert len(set(lowered.values)) == 1 and lowered.values[0] != 0
        assert report.inadmissible_m is None


def test_rodrigues_two_paths_agree(equation, weight):
    lat = equation.lattice
    window = Window(S(5), 7)
    for n in (1, 2, 3):
        via_delta = rodrigues_polynomial(equation, weight, n, window).solution
        rho_n = GridFunction.sample(window.expand(n, 0),
                                    lambda s, n=n: rho_k(equation, weight, n, s))
        via_nabla = iterated_nabla(lat, n, n, rho_n) / weight.rho.restrict(window)
        assert (via_delta - via_nabla).is_zero()


def test_rodrigues_scale_invariance(equation, weight, window):
    scaled = PearsonWeight(F(-7, 2) * weight.rho, weight.anchor)
    a = rodrigues_polynomial(equation, weight, 3, window)
    b = rodrigues_polynomial(equation, scaled, 3, window)
    assert a.solution == b.solution
    # but Y_n itself rescales
    assert (Y_n(equation, scaled, 2, window)
            - F(-7, 2) * Y_n(equation, weight, 2, window)).is_zero()


def test_rodrigues_window_too_small_names_requirement(equation, window):
    small = pearson_weight(equation, window, window.start)
    with pytest.raises(WindowTooSmall) as err:
        rodrigues_polynomial(equation, small, 3, window)
    assert "needs the weight on" in str(err.value)


def test_wrong_lambda_residual_is_nonzero(equation, weight, window):
    report = rodrigues_polynomial(equation, weight, 2, window,
                                  residual_lam=F(999))
    assert not report.is_exact_solution()
    assert report.residual_lam == F(999)


def test_second_solution_residual_and_independence(equation, weight, window):
    for n in range(4):
        report = second_solution(equation, weight, n, window)
        assert report.kind == "second_kind"
        assert report.is_exact_solution()
        assert not iterated_delta(equation.lattice, 0, n + 1, report.solution).is_zero()
        assert report.sum_base is not None


def test_second_solution_first_order_constancy(equation, weight):
    # with u1 = Y_n, the companion u2 = Y_n * C keeps
    # p1(s) nabla_{-n} u2 - p0(s) u2(s-1) constant in s
    lat = equation.lattice
    n = 2
    win = Window(S(5), 8)
    u1 = Y_n(equation, weight, n, win)
    factor = GridFunction.sample(win, lambda s: F(0))
    # rebuild the integral factor exactly as second_solution does
    from hyperlat import cumulative_nabla_sum

    def summand(t):
        den = weight.value_at(t)
        for j in range(n + 1):
            den *= sigma_of_s(equation, t - j)
        return 1 / den

    g = GridFunction.sample(win, summand)
    factor = cumulative_nabla_sum(lat, -n, g, win.start)
    u2 = u1 * factor
    grad = nabla_k(lat, -n, u2)
    constants = set()
    for s in grad.points():
        nxn = lat.nabla_x(-n, s)
        p1 = sigma_of_s(equation, s - n)
        p0 = ((sigma_of_s(equation, s - 1) - sigma_of_s(equation, s - n)) / nxn
              + tau_of_s(equation, s - 1) * lat.nabla_x(-1, s) / nxn)
        constants.add(p1 * grad.value_at(s) - p0 * u2.value_at(s - 1))
    assert len(constants) == 1


def test_second_solution_base_shift_is_polynomial_multiple(equation, weight, window):
    n = 2
    poly = rodrigues_polynomial(equation, weight, n, window).solution
    a = second_solution(equation, weight, n, window).solution
    b = second_solution(equation, weight, n, window, N=window.start + 2).solution
    ratios = {(a.value_at(s) - b.value_at(s)) / poly.value_at(s)
              for s in window.points() if poly.value_at(s) != 0}
    assert len(ratios) == 1


def test_solution_combination_still_solves(equation, weight, window):
    n = 3
    poly = rodrigues_polynomial(equation, weight, n, window)
    second = second_solution(equation, weight, n, window)
    eq_n = equation.with_lambda(poly.lam_n)
    mix = F(2) * poly.solution + F(-5, 3) * second.solution
    assert apply_L(eq_n, mix).is_zero()


def test_second_sum_base_out_of_window(equation, weight, window):
    with pytest.raises(OutOfWindow):
        second_solution(equation, weight, 1, window, N=window.start - 10)


def test_singular_summand_named():
    # sigma(s) = (s+2)(s-1) vanishes at s = 1: below the weight window, but
    # the n = 2 summand product sigma(t)sigma(t-1)sigma(t-2) reaches it
    from fractions import Fraction
    from hyperlat import HyperEquation, QuadraticLattice

    lat = QuadraticLattice(Fraction(1), Fraction(1), Fraction(0))
    eq = HyperEquation(lat, (Fraction(-2), Fraction(1), Fraction(0)),
                       (Fraction(0), Fraction(0)))
    window = Window(S(4), 6)
    weight = pearson_weight(eq, weight_window_for(2, window), window.start)
    with pytest.raises(SingularSummand) as err:
        second_solution(eq, weight, 2, window)
    assert err.value.point == S(3)


def test_generalized_zero_polynomial(equation, weight, window):
    report = generalized_solution(equation, weight, 2, window,
                                  P=(F(0), F(0), F(0)))
    assert report.solution.is_zero()
    assert report.residual.is_zero()


def test_generalized_constant_matches_second_at_order_zero(equation, weight, window):
    a = generalized_solution(equation, weight, 0, window, P=(F(1),))
    b = second_solution(equation, weight, 0, window)
    assert a.solution == b.solution


def test_generalized_random_polynomials(equation, weight, window):
    rng = random.Random(23)
    for n in (1, 2, 3):
        for _ in range(3):
            P = tuple(F(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(n + 1))
            report = generalized_solution(equation, weight, n, window, P=P)
            assert report.is_exact_solution()
            assert report.poly == P


def test_generalized_needs_right_coefficient_count(equation, weight, window):
    with pytest.raises(ValueError):
        generalized_solution(equation, weight, 2, window, P=(F(1), F(2)))


def test_gamma_ell_eta_consistency(equation):
    lat = equation.lattice
    for n in (1, 2, 3):
        etas = set()
        for twice in range(8, 18, 2):
            s = HalfInt(twice)
            gamma, ell, eta = gamma_ell_eta(equation, n, s)
            _, ell_next, _ = gamma_ell_eta(equation, n, s + 1)
            dsig = ((sigma_star(equation, s + 1) - sigma_star(equation, s))
                    / lat.delta_x(-(n + 1), s))
            assert ell_next * lat.delta_x(-n, s) / lat.delta_x(-(n + 1), s) + dsig == gamma
            etas.add(eta)
        assert len(etas) == 1
        assert etas.pop() == -equation.kappa(2 * n - 1)


def test_homogeneous_first_order_solution(equation, weight):
    lat = equation.lattice
    n = 2
    win = Window(S(5), 7)
    v = Y_n(equation, weight, n, win)
    grad = nabla_k(lat, -n, v)
    for s in grad.points():
        _, ell, _ = gamma_ell_eta(equation, n, s)
        assert sigma_star(equation, s) * grad.value_at(s) + ell * v.value_at(s) == 0


def test_weight_product_ladder_solves_adjoint(equation, weight):
    # w = delta_{-n}^(n) Y_n satisfies L*[w] = 0 at lambda = lambda_n
    for n in (1, 2, 3):
        eq_n = equation.with_lambda(lambda_n(equation, n))
        win = Window(S(5), 7 + n)
        w = iterated_delta(eq_n.lattice, -n, n, Y_n(eq_n, weight, n, win))
        assert apply_L_star(eq_n, w).is_zero()


def test_solve_dispatch_and_report_json(equation, window):
    report = solve(equation, 2, window, kind="second")
    payload = report.to_json_dict()
    assert payload["kind"] == "second_kind"
    assert payload["n"] == 2
    assert payload["residual_max_abs"] == "0"
    assert payload["window"] == {"start": str(window.start), "length": window.length}
    assert len(payload["values"]) == window.length
    assert payload["provenance"]["N"] is not None
    with pytest.raises(ValueError):
        solve(equation, 2, window, kind="generalized")   # P missing
    with pytest.raises(ValueError):
        solve(equation, 2, window, kind="nonsense")

//! Chi-square and Student-t distribution functions against high-precision
//! reference values, closed-form finite series and `statrs`.

#![allow(clippy::excessive_precision)]

mod common;

use common::{chi2_sf_even, rel_err, t_cdf_even, t_cdf_odd};
use statrs::distribution::{ChiSquared, ContinuousCDF, StudentsT};
use tsgeval::rank::special::{chi2_cdf, chi2_sf, gamma_p, gamma_q, ln_gamma, t_cdf, t_two_sided};

const TOL: f64 = 1e-10;

/// `(x, df, cdf, sf)` evaluated with 40-digit arithmetic.
const CHI2: [(f64, f64, f64, f64); 14] = [
    (0.5, 1.0, 0.52049987781304653768, 0.47950012218695346232),
    (1.0, 1.0, 0.68268949213708589717, 0.31731050786291410283),
    (3.84, 1.0, 0.94995647875129489681, 0.050043521248705103189),
    (2.0, 2.0, 0.6321205588285576784, 0.3678794411714423216),
    (5.99, 2.0, 0.94996337291341371748, 0.050036627086586282516),
    (7.8, 3.0, 0.94966890214014664538, 0.050331097859853354623),
    (0.3, 4.0, 0.01018582711118352097, 0.98981417288881647903),
    (9.49, 4.0, 0.95004686877670510694, 0.049953131223294893057),
    (20.0, 10.0, 0.97074731192303892733, 0.029252688076961072673),
    (3.0, 10.0, 0.018575936222140674301, 0.9814240637778593257),
    (50.0, 30.0, 0.98759793928109942005, 0.012402060718900579954),
    (100.0, 80.0, 0.93542963107886702424, 0.064570368921132975762),
    (0.001, 5.0, 1.681487718970627543e-9, 0.99999999831851228103),
    (
        150.0,
        60.0,
        0.99999999883878424992,
        1.1612157500765536288e-9,
    ),
];

/// `(t, df, cdf)` evaluated with 40-digit arithmetic.
const STUDENT: [(f64, f64, f64); 12] = [
    (0.5, 1.0, 0.64758361765043327418),
    (-2.0, 1.0, 0.14758361765043327418),
    (1.0, 2.0, 0.78867513459481288225),
    (2.5, 3.0, 0.95614667649596722637),
    (-1.3, 5.0, 0.12515031708533861197),
    (2.228, 10.0, 0.97499411409144431732),
    (3.5, 7.0, 0.99500347955905722637),
    (-0.1, 30.0, 0.46050480589513557586),
    (4.0, 12.0, 0.99911915187780248629),
    (1.96, 1000.0, 0.97486340752212564078),
    (-6.0, 4.0, 0.0019412685234802552102),
    (0.7, 2.5, 0.7282975284052259609),
];

const LN_GAMMA: [(f64, f64); 7] = [
    (0.1, 2.252712651734205902),
    (0.5, 0.57236494292470008707),
    (1.5, -0.12078223763524522235),
    (3.7, 1.4280723266653881292),
    (10.25, 13.368023671476046295),
    (100.0, 359.13420536957539878),
    (1234.5, 7550.5509010778948957),
];

#[test]
fn chi_square_reference_points() {
    for &(x, df, cdf, sf) in &CHI2 {
        assert!(
            rel_err(chi2_cdf(x, df), cdf) < TOL,
            "cdf({x}, {df}) = {}",
            chi2_cdf(x, df)
        );
        assert!(
            rel_err(chi2_sf(x, df), sf) < TOL,
            "sf({x}, {df}) = {}",
            chi2_sf(x, df)
        );
    }
}

#[test]
fn student_t_reference_points() {
    for &(t, df, cdf) in &STUDENT {
        assert!(
            rel_err(t_cdf(t, df), cdf) < TOL,
            "t_cdf({t}, {df}) = {}",
            t_cdf(t, df)
        );
        let two = 2.0 * cdf.min(1.0 - cdf);
        assert!(
            rel_err(t_two_sided(t, df), two) < 1e-9,
            "two-sided({t}, {df})"
        );
    }
}

#[test]
fn ln_gamma_reference_points() {
    for &(x, want) in &LN_GAMMA {
        assert!(
            (ln_gamma(x) - want).abs() < 1e-12 * want.abs().max(1.0),
            "ln_gamma({x})"
        );
    }
}

#[test]
fn chi_square_even_df_closed_form() {
    for df in (2..=40).step_by(2) {
        for &x in &[0.01, 0.5, 1.0, 3.3, 7.0, 15.0, 30.0, 60.0] {
            let want = chi2_sf_even(x, df);
            assert!(rel_err(chi2_sf(x, df as f64), want) < TOL, "sf({x}, {df})");
        }
    }
}

#[test]
fn student_t_finite_series() {
    for df in 1..=25u32 {
        for &t in &[-4.0, -2.0, -0.3, 0.0, 0.4, 1.0, 2.2, 5.0] {
            let want = if df % 2 == 1 {
                t_cdf_odd(t, df)
            } else {
                t_cdf_even(t, df)
            };
            assert!(rel_err(t_cdf(t, df as f64), want) < TOL, "t_cdf({t}, {df})");
        }
    }
}

#[test]
fn deep_lower_tail() {
    // Too far out for the finite series (cancellation); 40-digit reference value.
    assert!(rel_err(t_cdf(-7.5, 16.0), 6.3393576489396763711e-7) < TOL);
}

#[test]
fn agrees_with_statrs() {
    for &df in &[1.0, 2.0, 3.5, 9.0, 27.0, 120.0] {
        let chi = ChiSquared::new(df).unwrap();
        let st = StudentsT::new(0.0, 1.0, df).unwrap();
        for &x in &[0.05, 0.7, 2.0, 6.5, 18.0] {
            assert!(rel_err(chi2_cdf(x, df), chi.cdf(x)) < 1e-9, "chi2 {x} {df}");
            let t = x - 3.0;
            assert!(rel_err(t_cdf(t, df), st.cdf(t)) < 1e-9, "t {t} {df}");
        }
    }
}

#[test]
fn incomplete_gamma_identities() {
    // P(1, x) = 1 − e^{−x}
    for &x in &[1e-6, 0.1, 1.0, 5.0, 40.0] {
        assert!(rel_err(gamma_p(1.0, x), -(-x).exp_m1()) < 1e-13);
        assert!(rel_err(gamma_q(1.0, x), (-x).exp()) < 1e-13);
    }
    // Recurrence P(a+1, x) = P(a, x) − x^a e^{−x} / Γ(a+1)
    for &(a, x) in &[(0.5, 0.3), (2.5, 4.0), (7.0, 3.0), (12.0, 20.0)] {
        let lhs = gamma_p(a + 1.0, x);
        let rhs = gamma_p(a, x) - (a * f64::ln(x) - x - ln_gamma(a + 1.0)).exp();
        assert!((lhs - rhs).abs() < 1e-13, "a={a} x={x}");
    }
}

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::lines::{line_containment_conditions, ParamLine};
use super::mpoly::{mint, mvar, MPoly, Monomial};
use crate::error::{Error, Result};
use crate::linalg::{kernel, rank, Matrix};
use crate::ratmath::{Poly1, RatFunc, Rational};

pub const CONIC_COEFFS: [&str; 6] = ["a1", "a2", "a3", "a4", "a5", "a6"];

fn x(i: usize) -> MPoly {
    mvar(&format!("x{i}"))
}

/// `[x0 x3 - x1 x2 : x1^2 - x0 x2 : x2^2 - x1 x3]`, given by the net of quadrics through the cubic.
pub fn quadric_map() -> [MPoly; 3] {
    [
        &(&x(0) * &x(3)) - &(&x(1) * &x(2)),
        &x(1).pow(2) - &(&x(0) * &x(2)),
        &x(2).pow(2) - &(&x(1) * &x(3)),
    ]
}

/// Pulls `a1 x^2 + a2 xy + a3 xz + a4 y^2 + a5 yz + a6 z^2` back to P^3.
pub fn pullback_under_quadric_map(a: &[MPoly; 6]) -> MPoly {
    let [y0, y1, y2] = quadric_map();
    let monomials = [
        &y0 * &y0,
        &y0 * &y1,
        &y0 * &y2,
        &y1 * &y1,
        &y1 * &y2,
        &y2 * &y2,
    ];
    a.iter()
        .zip(&monomials)
        .fold(MPoly::zero(), |acc, (c, m)| &acc + &(c * m))
}

pub fn symbolic_conic() -> [MPoly; 6] {
    CONIC_COEFFS.map(mvar)
}

/// Matrix of the linear conditions on `a1..a6`, entries in Q(s).
fn condition_matrix(conditions: &[MPoly], param: &str) -> Result<Matrix<RatFunc>> {
    conditions
        .iter()
        .map(|c| {
            let by_a = c.coefficients_in(&CONIC_COEFFS);
            CONIC_COEFFS
                .iter()
                .map(|ai| {
                    let coeff = by_a.get(&Monomial::var(ai, 1)).cloned().unwrap_or_else(MPoly::zero);
                    Ok(RatFunc::poly(coeff.to_poly1(param)?))
                })
                .collect()
        })
        .collect()
}

/// The conic whose pullback contains the invariant line `L_s`, normalized by `a6 = 1`.
pub fn solve_conic_through_line() -> Result<[RatFunc; 6]> {
    let f = pullback_under_quadric_map(&symbolic_conic());
    let conditions = line_containment_conditions(&f, &ParamLine::invariant("s"))?;
    let m = condition_matrix(&conditions, "s")?;
    let ker = kernel(&m, 6);
    if ker.len() != 1 {
        return Err(Error::Certificate(format!(
            "expected a unique conic through L_s, solution space has dimension {}",
            ker.len()
        )));
    }
    let v = &ker[0];
    if v[5].is_zero() {
        return Err(Error::Certificate("solution has a6 = 0".into()));
    }
    let norm = v[5].clone();
    Ok(std::array::from_fn(|i| v[i].clone() / norm.clone()))
}

/// Clears a common denominator from conic coefficients in Q(s).
fn clear_denominators(a: &[RatFunc; 6]) -> [MPoly; 6] {
    let mut lcm = Poly1::constant('s', Rational::one());
    for c in a {
        let g = Poly1::gcd(&lcm, c.denom());
        lcm = (&lcm * c.denom()).div_rem(&g).0;
    }
    std::array::from_fn(|i| {
        let scaled = (&lcm * a[i].numer()).div_rem(a[i].denom()).0;
        MPoly::from_poly1(&scaled, "s")
    })
}

/// `pi(R)` through `L_s`, multiplied through by `s`.
pub fn pi_r_quartic() -> Result<MPoly> {
    Ok(pullback_under_quadric_map(&clear_denominators(&solve_conic_through_line()?)))
}

/// The two conditions for a second invariant line `L_t` to lie on `pi(R)`.
pub fn secant_conditions() -> (MPoly, MPoly) {
    let (s, t) = (mvar("s"), mvar("t"));
    // -t^4 - 4ts + (s^2 + 3)t^2 + s^2
    let quartic = &(&(&(-&t.pow(4)) - &(&t * &s).scale(&Rational::from_integer(4.into())))
        + &(&(&s.pow(2) + &mint(3)) * &t.pow(2)))
        + &s.pow(2);
    // s + (-s^2 - 1)t + t^2 s
    let linear = &(&s - &(&(&s.pow(2) + &mint(1)) * &t)) + &(&t.pow(2) * &s);
    (quartic, linear)
}

/// Certificates that the system forces `s = t` once `s` is not in {0, 1, -1}.
#[derive(Clone, Debug, PartialEq)]
pub struct SecantCertificate {
    /// Raw containment conditions of `L_t` in `pi(R)`.
    pub conditions: Vec<MPoly>,
    pub quartic: MPoly,
    pub linear: MPoly,
    /// `(s - t)(1 - s t)`
    pub factorization: (MPoly, MPoly),
    /// The quartic condition at `t = 1/s`.
    pub branch_value: RatFunc,
}

impl SecantCertificate {
    pub fn lines(&self) -> Vec<String> {
        vec![
            format!("conditions: {}", self.conditions.len()),
            format!("quartic: {} = 0", self.quartic),
            format!("linear: {} = 0", self.linear),
            format!("linear = ({})*({})", self.factorization.0, self.factorization.1),
            format!("quartic at t = 1/s: {}", self.branch_value),
        ]
    }
}

fn coefficient_rows(polys: &[MPoly]) -> Matrix<Rational> {
    let mut monos: Vec<Monomial> = polys.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();
    polys.iter().map(|p| monos.iter().map(|m| p.coeff(m)).collect()).collect()
}

/// Same Q-span: the raw conditions are equivalent to the displayed pair.
fn same_span(a: &[MPoly], b: &[MPoly]) -> bool {
    let all: Vec<MPoly> = a.iter().chain(b).cloned().collect();
    let r = rank(&coefficient_rows(&all));
    r == rank(&coefficient_rows(a)) && r == rank(&coefficient_rows(b))
}

pub fn verify_secant_lemma() -> Result<SecantCertificate> {
    let quartic_r = pi_r_quartic()?;
    let conditions = line_containment_conditions(&quartic_r, &ParamLine::invariant("t"))?;
    let (quartic, linear) = secant_conditions();
    if !same_span(&conditions, &[quartic.clone(), linear.clone()]) {
        return Err(Error::Certificate(
            "containment conditions of L_t differ from the two-equation system".into(),
        ));
    }
    let (s, t) = (mvar("s"), mvar("t"));
    let factorization = (&s - &t, &mint(1) - &(&s * &t));
    if &factorization.0 * &factorization.1 != linear {
        return Err(Error::Certificate("linear condition is not (s - t)(1 - st)".into()));
    }
    let mut at = BTreeMap::new();
    at.insert("s", RatFunc::s());
    at.insert("t", RatFunc::one() / RatFunc::s());
    let branch_value = quartic.eval(&at)?;
    // (s^2 - 1)^3 / s^4
    let s2m1 = Poly1::new('s', vec![-Rational::one(), Rational::zero(), Rational::one()]);
    let s4 = Poly1::new('s', vec![Rational::zero(); 4].into_iter().chain([Rational::one()]).collect());
    let expected = RatFunc::new(s2m1.pow(3), s4);
    if branch_value != expected && branch_value != -expected {
        return Err(Error::Certificate(format!("quartic at t = 1/s gives {branch_value}")));
    }
    Ok(SecantCertificate {
        conditions,
        quartic,
        linear,
        factorization,
        branch_value,
    })
}

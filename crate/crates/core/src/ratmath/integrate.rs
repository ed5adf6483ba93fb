use super::{Poly1, Poly2};
use crate::error::{Error, Result};
use crate::scalar::{Field, OrderedField};

/// Exact definite integral of `p` from `a` to `b`; `a > b` gives the negated value.
pub fn integrate_univariate<T: Field>(p: &Poly1<T>, a: &T, b: &T) -> T {
    let anti = p.antiderivative();
    anti.eval(b) - anti.eval(a)
}

/// `int_{u_lo}^{u_hi} int_{v_lo(u)}^{v_hi(u)} f(u, v) dv du`.
///
/// The bounds must satisfy `v_lo <= v_hi`; this is checked at both endpoints and
/// the midpoint of the u-range.
pub fn integrate_region<T: OrderedField>(
    f: &Poly2<T>,
    u_lo: &T,
    u_hi: &T,
    v_lo: &Poly1<T>,
    v_hi: &Poly1<T>,
) -> Result<T> {
    let two = T::from_int(2);
    let mid = (u_lo.clone() + u_hi.clone()) / two;
    for u in [u_lo, &mid, u_hi] {
        if v_lo.eval(u) > v_hi.eval(u) {
            return Err(Error::InvalidRegion(format!("{u:?}")));
        }
    }
    let anti = f.antiderivative_v();
    let inner = &anti.subst_v(v_hi) - &anti.subst_v(v_lo);
    Ok(integrate_univariate(&inner, u_lo, u_hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::{int, rat, Rational};

    fn u() -> Poly1 {
        Poly1::var('u')
    }

    fn c(n: i64) -> Poly1 {
        Poly1::constant('u', int(n))
    }

    fn midpoint_1d(p: &Poly1, a: f64, b: f64, n: usize) -> f64 {
        let pf = Poly1::new('u', p.coeffs().iter().map(crate::ratmath::to_f64).collect());
        let h = (b - a) / n as f64;
        (0..n).map(|k| pf.eval(&(a + (k as f64 + 0.5) * h))).sum::<f64>() * h
    }

    #[test]
    fn univariate_examples() {
        assert_eq!(integrate_univariate(&u(), &int(0), &int(1)), rat(1, 2));
        // 4(u-1)(6-4u) on [1, 3/2]
        let p = (&(&u() - &c(1)) * &(&c(6) - &u().scale(&int(4)))).scale(&int(4));
        assert_eq!(integrate_univariate(&p, &int(1), &rat(3, 2)), rat(1, 3));
        let cube = (&c(1) - &u()).pow(3).scale(&int(28));
        assert_eq!(integrate_univariate(&cube, &int(0), &int(1)), int(7));
        assert_eq!(integrate_univariate(&cube, &int(1), &int(0)), int(-7));
    }

    #[test]
    fn univariate_against_midpoint_rule() {
        let p = (&(&u() - &c(1)) * &(&c(6) - &u().scale(&int(4)))).scale(&int(4));
        let est = midpoint_1d(&p, 1.0, 1.5, 10_000);
        assert!((est - 1.0 / 3.0).abs() < 1e-6 * (1.0 / 3.0));
    }

    #[test]
    fn region_examples() {
        let uu = Poly2::<Rational>::u();
        let vv = Poly2::<Rational>::v();
        let four = Poly2::constant(int(4));
        let lin = &(&four - &uu) - &vv;
        let f = &(&lin * &lin) - &four;
        let got = integrate_region(&f, &int(0), &int(1), &Poly1::zero_in('u'), &(&c(2) - &u())).unwrap();
        assert_eq!(got, rat(71, 12));

        let one = Poly2::constant(int(1));
        assert_eq!(integrate_region(&one, &int(0), &int(1), &c(0), &c(1)).unwrap(), int(1));
    }

    #[test]
    fn region_against_riemann_sum() {
        // 2(1+u-v)(3-u-3v) over 0 <= u <= 1, 0 <= v <= (3-u)/3
        let uu = Poly2::<Rational>::u();
        let vv = Poly2::<Rational>::v();
        let a = &(&Poly2::constant(int(1)) + &uu) - &vv;
        let b = &(&Poly2::constant(int(3)) - &uu) - &vv.scale(&int(3));
        let f = (&a * &b).scale(&int(2));
        let hi = Poly1::linear('u', rat(-1, 3), int(1));
        let exact = integrate_region(&f, &int(0), &int(1), &c(0), &hi).unwrap();
        assert_eq!(exact, rat(131, 54));

        let n = 2000;
        let mut sum = 0.0;
        for i in 0..n {
            let uf = (i as f64 + 0.5) / n as f64;
            let top = (3.0 - uf) / 3.0;
            let h = top / n as f64;
            for j in 0..n {
                let vf = (j as f64 + 0.5) * h;
                sum += 2.0 * (1.0 + uf - vf) * (3.0 - uf - 3.0 * vf) * h;
            }
        }
        sum /= n as f64;
        let e = crate::ratmath::to_f64(&exact);
        assert!((sum - e).abs() < 1e-6 * e);
    }

    #[test]
    fn reversed_bounds_are_rejected() {
        let one = Poly2::constant(int(1));
        let err = integrate_region(&one, &int(0), &int(1), &c(1), &c(0)).unwrap_err();
        assert!(matches!(err, Error::InvalidRegion(_)));
    }

    #[test]
    fn works_over_floats() {
        let p = Poly1::new('u', vec![0.0f64, 1.0]);
        assert!((integrate_univariate(&p, &0.0, &1.0) - 0.5).abs() < 1e-15);
    }
}

//! Independent checks behind the corpus expectations. They use only polynomial
//! arithmetic and integer power series, never the resolution machinery.

use std::sync::Arc;

use gorenstein_core::{parse_poly, Field, GradedRing, Polynomial};

const LINEAR_FORMS: [&str; 4] = ["3*x0-x1+2*x4", "x1+5*x2-x3", "2*x0+x3-7*x4", "x2-4*x1+x4"];
const QUADRIC: &str = "x0*x2-3*x1^2+x3*x4+2*x4^2-x0*x1";

fn ring(names: &[&str]) -> Arc<GradedRing> {
    GradedRing::standard(names, Field::default()).unwrap().into_arc()
}

fn poly(r: &Arc<GradedRing>, s: &str) -> Polynomial {
    parse_poly(s, r).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn product(a: &[Vec<Polynomial>], b: &[Vec<Polynomial>]) -> Vec<Vec<Polynomial>> {
    let r = a[0][0].ring();
    a.iter()
        .map(|row| {
            (0..b[0].len())
                .map(|j| row.iter().zip(b).fold(Polynomial::zero(r), |acc, (x, brow)| acc.add(&x.mul(&brow[j]))))
                .collect()
        })
        .collect()
}

fn is_zero(m: &[Vec<Polynomial>]) -> bool {
    m.iter().flatten().all(Polynomial::is_zero)
}

/// Coefficients of `numerator / prod (1 - T^w)` up to `T^n`.
fn series(numerator: &[i64], weights: &[usize], n: usize) -> Vec<i64> {
    let mut s: Vec<i64> = (0..=n).map(|i| numerator.get(i).copied().unwrap_or(0)).collect();
    for &w in weights {
        for i in w..=n {
            s[i] += s[i - w];
        }
    }
    s
}

/// `series` times `prod (1 - T^w)`, truncated at `T^n`.
fn numerator(series: &[i64], weights: &[usize]) -> Vec<i64> {
    let mut s = series.to_vec();
    for &w in weights {
        for i in (w..s.len()).rev() {
            s[i] -= s[i - w];
        }
    }
    s
}

#[test]
fn koszul_middle_map_is_alternating_and_exact_in_the_middle() {
    let s = ring(&["x", "y", "z"]);
    let f: Vec<Polynomial> = ["x^2+y*z", "y^3-x*z^2", "z^4+x^3*y"].iter().map(|g| poly(&s, g)).collect();
    let z = Polynomial::zero(&s);
    let skew = vec![
        vec![z.clone(), f[2].clone(), f[1].neg()],
        vec![f[2].neg(), z.clone(), f[0].clone()],
        vec![f[1].clone(), f[0].neg(), z],
    ];
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(skew[i][j], skew[j][i].neg());
        }
    }
    // Submaximal Pfaffians of a 3x3 alternating matrix are its entries up to sign.
    assert!(is_zero(&product(std::slice::from_ref(&f), &skew)));
    let column: Vec<Vec<Polynomial>> = f.iter().map(|g| vec![g.clone()]).collect();
    assert!(is_zero(&product(&skew, &column)));
}

#[test]
fn curve_hilbert_function_agrees_over_both_rings() {
    // Betti numbers over k[x0..x4, y] and over k[x0..x4] respectively.
    let over_t = [1, 0, -6, 5, 5, -6, 0, 1];
    let over_s = [1, 1, -5, 0, 5, -1, -1];
    let a = series(&over_t, &[1; 6], 12);
    let b = series(&over_s, &[1; 5], 12);
    assert_eq!(a, b);
    // Riemann-Roch for a canonical curve of genus 6: h(n) = 10n - 5 for n >= 2.
    assert_eq!(&a[..2], &[1, 6]);
    for (n, &h) in a.iter().enumerate().skip(2) {
        assert_eq!(h, 10 * n as i64 - 5);
    }
}

struct PrintedCurve {
    d1: Vec<Vec<Polynomial>>,
    d2: Vec<Vec<Polynomial>>,
}

fn printed_curve() -> PrintedCurve {
    let s = ring(&["x0", "x1", "x2", "x3", "x4"]);
    let p = |e: &str| {
        let mut e = e.to_string();
        for (i, l) in LINEAR_FORMS.iter().enumerate() {
            e = e.replace(&format!("l{}", i + 1), &format!("({l})"));
        }
        poly(&s, &e.replace('q', &format!("({QUADRIC})")))
    };
    let d1 = vec![
        ["x3*l1-x2*l3", "x3*l2-x2*l4", "-x1*l1+x0*l2", "-x1*l3+x0*l4", "q", "x4*(l1*l4-l2*l3)"].map(p).to_vec(),
        ["x0", "x1", "x2", "x3", "x4", "q"].map(p).to_vec(),
    ];
    let upper = [
        "q", "-x4*l4", "x4*l2", "-x3*l2+x2*l4", "x1", "x4*l3", "-x4*l1", "x3*l1-x2*l3", "-x0", "q", "x1*l3-x0*l4",
        "x3", "-x1*l1+x0*l2", "-x2", "0",
    ]
    .map(p);
    let mut d2 = vec![vec![Polynomial::zero(&s); 6]; 6];
    let mut k = 0;
    for i in 0..6 {
        for j in i + 1..6 {
            d2[i][j] = upper[k].clone();
            d2[j][i] = upper[k].neg();
            k += 1;
        }
    }
    PrintedCurve { d1, d2 }
}

#[test]
fn printed_curve_matrices_do_not_compose_to_zero() {
    let c = printed_curve();
    assert!(!is_zero(&product(&c.d1, &c.d2)));
}

#[test]
fn curve_matrices_compose_to_zero_after_negating_the_last_column() {
    let mut c = printed_curve();
    for row in &mut c.d1 {
        row[5] = row[5].neg();
    }
    assert!(is_zero(&product(&c.d1, &c.d2)));
}

#[test]
fn surface_quadric_clears_to_minus_the_determinant() {
    let s = ring(&["u0", "u1", "u2", "u3"]);
    let c2 = poly(&s, "u0^2-3*u1*u2+u3^2+2*u0*u3");
    let c4 = poly(&s, "u1^4+u0*u2^3-5*u3^4+u0^2*u1*u3");
    let a12 = poly(&s, "u0^3+2*u1^2*u2-u2*u3^2+u1*u2*u3");
    let a22 = poly(&s, "u0+3*u1-u2+2*u3");
    let a11 = c2.mul(&a12).add(&c4.mul(&a22));
    let det = a11.mul(&a22).sub(&a12.mul(&a12));
    // a22^2 q(-a12/a22) for q = x0^2 + c2 x0 - c4 and for the sign-flipped x0^2 - c2 x0 + c4.
    let cleared = |sign: i64| {
        let k = Polynomial::from_i64(&s, sign);
        a12.mul(&a12).sub(&k.mul(&c2).mul(&a12).mul(&a22)).sub(&k.mul(&c4).mul(&a22).mul(&a22))
    };
    assert_eq!(cleared(1), det.neg());
    assert_ne!(cleared(-1), det.neg());
    assert_ne!(cleared(-1), det);
}

#[test]
fn godeaux_numerator_from_plurigenera() {
    let plurigenera: Vec<i64> = (0..40i64).map(|n| if n == 1 { 0 } else { 1 + n * (n - 1) / 2 }).collect();
    let weights = [2, 2, 3, 3, 3, 3];
    let num = numerator(&plurigenera, &weights);
    let expected = [1, 0, 0, 0, 4, 3, -6, -12, -8, 8, 12, 6, -3, -4, 0, 0, 0, -1];
    assert_eq!(&num[..18], &expected);
    assert!(num[18..].iter().all(|&c| c == 0));
    // Odd codimension and twist -17 make the numerator antisymmetric.
    for i in 0..=17 {
        assert_eq!(num[i], -num[17 - i]);
    }
}

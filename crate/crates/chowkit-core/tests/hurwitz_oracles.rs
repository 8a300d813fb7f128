//! Hurwitz forms of plane conics against dual-conic and tangency oracles.

use chowkit_core::dimension::ProjectiveVariety;
use chowkit_core::hurwitz::{hurwitz_form, u_resultant};
use chowkit_core::poly::{MPoly, VarTable};
use chowkit_core::RandomGrid;
use num_traits::Zero;

fn conic(kind: u8) -> ProjectiveVariety {
    let x = VarTable::single_block(&["x0", "x1", "x2"]);
    let v = |i| MPoly::var(&x, i);
    let f = match kind {
        0 => &(&v(0) * &v(2)) - &v(1).pow(2),
        _ => &(&v(0).pow(2) + &v(1).pow(2)) - &v(2).pow(2),
    };
    ProjectiveVariety::new(vec![f]).unwrap()
}

#[test]
fn u_resultant_has_degree_two_in_m() {
    let mut g = RandomGrid::new(0, 100, 3);
    let r1 = u_resultant(&conic(0), 1, &mut g).unwrap();
    assert_eq!(r1.block_degree(1), 2);
}

#[test]
fn parabola_conic_gives_b2_minus_4ac() {
    let mut g = RandomGrid::new(0, 100, 3);
    let h = hurwitz_form(&conic(0), 1, &mut g).unwrap();
    let u = h.poly.vars().clone();
    let b = |j| MPoly::var(&u, j);
    let oracle = &b(1).pow(2) - &(&b(0) * &b(2)).scale(&4.into());
    assert_eq!(h.poly, oracle.normalize());
    // tangent line at (s^2 : s t : t^2) is t^2 x0 - 2 s t x1 + s^2 x2
    for (s, t) in [(1i64, 2i64), (3, -1), (2, 5)] {
        assert!(h.poly.eval_i64(&[t * t, -2 * s * t, s * s]).is_zero());
    }
    // the secant through (1:0:0) and (1:1:1) is x1 - x2
    assert!(!h.poly.eval_i64(&[0, 1, -1]).is_zero());
}

#[test]
fn circle_conic_is_self_dual() {
    let mut g = RandomGrid::new(0, 100, 3);
    let h = hurwitz_form(&conic(1), 1, &mut g).unwrap();
    assert_eq!(h.poly.to_string(), "u10^2 + u11^2 - u12^2");
    assert_eq!(h.degrees, vec![2]);
}

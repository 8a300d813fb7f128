use std::collections::BTreeSet;

use chowkit_core::chow::chow_form;
use chowkit_core::dimension::{meets_generic_slice, projection_dim_table, ProjectiveVariety};
use chowkit_core::multiproj::{
    chow_hypersurface_formats, hurwitz_hypersurface_formats, multi_chow_form, multidegree, support, MultiprojVariety,
};
use chowkit_core::polymatroid::Polymatroid;
use chowkit_core::{MPoly, RandomGrid, VarTable};

/// C1 × C2 in P^3 × P^3 with C1 = V(x3, x0 x2 - x1^2), C2 = V(y3, y0^2 + y1^2 - y2^2).
fn conic_product() -> MultiprojVariety {
    let t = VarTable::from_blocks(&[vec!["x0", "x1", "x2", "x3"], vec!["y0", "y1", "y2", "y3"]]).unwrap();
    let v = |i| MPoly::var(&t, i);
    let polys = vec![
        v(3),
        &(&v(0) * &v(2)) - &v(1).pow(2),
        v(7),
        &(&v(4).pow(2) + &v(5).pow(2)) - &v(6).pow(2),
    ];
    MultiprojVariety::new(polys).unwrap().with_dim(2)
}

fn inner_product(n: usize) -> MultiprojVariety {
    let xs: Vec<String> = (0..=n).map(|i| format!("x{i}")).collect();
    let ys: Vec<String> = (0..=n).map(|i| format!("y{i}")).collect();
    let t = VarTable::from_blocks(&[xs, ys]).unwrap();
    let f = (0..=n).fold(MPoly::zero(&t), |acc, i| &acc + &(&MPoly::var(&t, i) * &MPoly::var(&t, n + 1 + i)));
    MultiprojVariety::new(vec![f]).unwrap().with_dim(2 * n - 1)
}

fn set(v: &[[usize; 2]]) -> BTreeSet<Vec<usize>> {
    v.iter().map(|a| a.to_vec()).collect()
}

#[test]
fn conic_product_formats_and_polymatroids() {
    let v = conic_product();
    let mut g = RandomGrid::new(11, 1000, 3);
    let table = projection_dim_table(&v, &mut g).unwrap();
    assert_eq!(table, vec![0, 1, 1, 2]);
    let n = v.n();
    let supp = support(&n, &table).unwrap();
    assert_eq!(supp, set(&[[2, 2]]));
    assert_eq!(multidegree(&v, &[2, 2], &mut g).unwrap(), 4);
    let chow = chow_hypersurface_formats(&n, &table).unwrap();
    assert_eq!(chow, set(&[[2, 1], [1, 2]]));
    let hurwitz = hurwitz_hypersurface_formats(&n, &table, |a| multidegree(&v, a, &mut g)).unwrap();
    assert_eq!(hurwitz, set(&[[1, 3], [2, 2], [3, 1]]));

    // the support polymatroid is the dual of the projection-dimension one
    let p = Polymatroid::new(n.clone(), table.iter().map(|&x| x as i64).collect()).unwrap();
    let sp = p.dual();
    assert_eq!(sp.bases(), supp);
    let t = sp.truncate().unwrap();
    assert_eq!(t.bases(), chow);
    assert_eq!(t.elongate().unwrap().bases(), hurwitz);
}

#[test]
fn support_agrees_with_random_slices() {
    let v = conic_product();
    let mut g = RandomGrid::new(12, 1000, 3);
    let supp = support(&v.n(), &[0, 1, 1, 2]).unwrap();
    for a in [[2usize, 2], [1, 3], [3, 1], [0, 3]] {
        let cuts: Vec<usize> = v.n().iter().zip(a).map(|(n, a)| n - a).collect();
        for _ in 0..5 {
            assert_eq!(meets_generic_slice(v.polys(), &cuts, &mut g).unwrap(), supp.contains(&a.to_vec()), "{a:?}");
        }
    }
}

#[test]
fn inner_product_multidegree_is_one() {
    for n in [1, 2] {
        let v = inner_product(n);
        let mut g = RandomGrid::new(n as u64, 1000, 3);
        let table = projection_dim_table(&v, &mut g).unwrap();
        assert_eq!(table, vec![0, n, n, 2 * n - 1]);
        assert_eq!(multidegree(&v, &[1, 0], &mut g).unwrap(), 1);
        // a support format with mdeg 1 is not a Hurwitz format
        let h = hurwitz_hypersurface_formats(&v.n(), &table, |a| multidegree(&v, a, &mut g)).unwrap();
        assert!(!h.contains(&vec![1, 0]));
    }
}

#[test]
fn product_chow_form_is_the_factor_chow_form() {
    let v = conic_product();
    let mut g = RandomGrid::new(13, 1000, 3);
    let cf = multi_chow_form(&v, 2, &[2, 1], &mut g).unwrap();
    // one form in block 0, two in block 1; only block 1 survives
    assert_eq!(cf.degrees, vec![0, 2, 2]);
    let y = VarTable::single_block(&["y0", "y1", "y2", "y3"]);
    let w = |i| MPoly::var(&y, i);
    let c2 = ProjectiveVariety::new(vec![w(3), &(&w(0).pow(2) + &w(1).pow(2)) - &w(2).pow(2)]).unwrap();
    let expected = chow_form(&c2, 1, &mut g).unwrap().poly.to_string();
    let renamed = cf.poly.to_string().replace("u1_0_", "u0").replace("u1_1_", "u1");
    assert_eq!(renamed, expected);
}

//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit status
//! if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command as Process;
use std::sync::Arc;
use std::time::Instant;

use chowkit_core::chow::{act_on_blocks, chow_bounds, chow_form, evaluate_on_plane, ChowForm};
use chowkit_core::dimension::{projection_dim_table, ProjectiveVariety};
use chowkit_core::hurwitz::{hurwitz_degree_bound, hurwitz_form, random_unimodular};
use chowkit_core::multiproj::{
    chow_hypersurface_formats, hurwitz_hypersurface_formats, multi_bounds, multi_chow_form, multidegree, support,
    MultiprojVariety,
};
use chowkit_core::poly::{mul_bitsize_bound, pow_bitsize_bound};
use chowkit_core::polydet::{det_cofactor, det_kronecker, PolyMatrix};
use chowkit_core::polymatroid::{random_submodular, Polymatroid};
use chowkit_core::resultant::{gcp_resultant, resultant_dense, MacaulaySystem};
use chowkit_core::{upoly, Error, MPoly, RandomGrid, VarTable};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

// ---------------------------------------------------------------------------
// fixtures

fn single(names: &[&str]) -> Arc<VarTable> {
    VarTable::single_block(names)
}

fn line() -> ProjectiveVariety {
    let x = single(&["x0", "x1", "x2", "x3"]);
    ProjectiveVariety::new(vec![MPoly::var(&x, 2), MPoly::var(&x, 3)]).unwrap()
}

fn point() -> ProjectiveVariety {
    let x = single(&["x0", "x1", "x2"]);
    ProjectiveVariety::new(vec![MPoly::var(&x, 1), MPoly::var(&x, 2)]).unwrap()
}

fn parabola() -> ProjectiveVariety {
    let x = single(&["x0", "x1", "x2"]);
    let v = |i| MPoly::var(&x, i);
    ProjectiveVariety::new(vec![&(&v(0) * &v(2)) - &v(1).pow(2)]).unwrap()
}

fn circle() -> ProjectiveVariety {
    let x = single(&["x0", "x1", "x2"]);
    let v = |i| MPoly::var(&x, i);
    ProjectiveVariety::new(vec![&(&v(0).pow(2) + &v(1).pow(2)) - &v(2).pow(2)]).unwrap()
}

fn twisted_cubic() -> ProjectiveVariety {
    let x = single(&["x0", "x1", "x2", "x3"]);
    let v = |i| MPoly::var(&x, i);
    ProjectiveVariety::new(vec![
        &(&v(0) * &v(2)) - &v(1).pow(2),
        &(&v(1) * &v(3)) - &v(2).pow(2),
        &(&v(0) * &v(3)) - &(&v(1) * &v(2)),
    ])
    .unwrap()
}

fn conic_product() -> MultiprojVariety {
    let t = VarTable::from_blocks(&[vec!["x0", "x1", "x2", "x3"], vec!["y0", "y1", "y2", "y3"]]).unwrap();
    let v = |i| MPoly::var(&t, i);
    MultiprojVariety::new(vec![
        v(3),
        &(&v(0) * &v(2)) - &v(1).pow(2),
        v(7),
        &(&v(4).pow(2) + &v(5).pow(2)) - &v(6).pow(2),
    ])
    .unwrap()
    .with_dim(2)
}

fn inner_product(n: usize) -> MultiprojVariety {
    let xs: Vec<String> = (0..=n).map(|i| format!("x{i}")).collect();
    let ys: Vec<String> = (0..=n).map(|i| format!("y{i}")).collect();
    let t = VarTable::from_blocks(&[xs, ys]).unwrap();
    let f = (0..=n).fold(MPoly::zero(&t), |acc, i| &acc + &(&MPoly::var(&t, i) * &MPoly::var(&t, n + 1 + i)));
    MultiprojVariety::new(vec![f]).unwrap().with_dim(2 * n - 1)
}

fn formats(v: &[[usize; 2]]) -> BTreeSet<Vec<usize>> {
    v.iter().map(|a| a.to_vec()).collect()
}

/// Vector orthogonal to three vectors of Z^4 (signed 3×3 minors).
fn cross4(a: [i64; 4], b: [i64; 4], c: [i64; 4]) -> [i64; 4] {
    let m = |i: usize, j: usize, k: usize| {
        a[i] * (b[j] * c[k] - b[k] * c[j]) - a[j] * (b[i] * c[k] - b[k] * c[i]) + a[k] * (b[i] * c[j] - b[j] * c[i])
    };
    [m(1, 2, 3), -m(0, 2, 3), m(0, 1, 3), -m(0, 1, 2)]
}

fn cross3(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Shared expensive results.
struct Computed {
    twisted: Option<ChowForm>,
}

// ---------------------------------------------------------------------------
// criteria

fn binary_form(v: &Arc<VarTable>, coeffs: &[i64]) -> MPoly {
    let d = coeffs.len() as u32 - 1;
    MPoly::from_terms(v, coeffs.iter().enumerate().map(|(i, &c)| (vec![d - i as u32, i as u32], BigInt::from(c))))
}

fn sylvester(a: &[i64], b: &[i64]) -> BigInt {
    let (d, e) = (a.len() - 1, b.len() - 1);
    let n = d + e;
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for r in 0..e {
        for (i, &c) in a.iter().enumerate() {
            m[r][r + i] = BigInt::from(c);
        }
    }
    for r in 0..d {
        for (i, &c) in b.iter().enumerate() {
            m[e + r][r + i] = BigInt::from(c);
        }
    }
    upoly::bareiss_det(m)
}

fn c1_sylvester() -> Outcome {
    let v = single(&["x0", "x1"]);
    let mut g = RandomGrid::new(1, 255, 3);
    for k in 0..200 {
        let d = g.range(1, 4) as usize;
        let e = g.range(1, 4) as usize;
        let mut a: Vec<i64> = (0..=d).map(|_| g.range(-255, 255)).collect();
        let mut b: Vec<i64> = (0..=e).map(|_| g.range(-255, 255)).collect();
        if a.iter().all(|&c| c == 0) {
            a[0] = 1;
        }
        if b.iter().all(|&c| c == 0) {
            b[e] = 1;
        }
        let sys = MacaulaySystem::new(vec![binary_form(&v, &a), binary_form(&v, &b)], 0).map_err(|e| e.to_string())?;
        let r = resultant_dense(&sys, &mut g).map_err(|e| format!("pair {k}: {e}"))?;
        ensure!(r.constant_term().abs() == sylvester(&a, &b).abs(), "pair {k}: {a:?} {b:?}");
    }
    Ok("200 pairs equal the Sylvester determinant up to sign".into())
}

fn random_poly(t: &Arc<VarTable>, g: &mut RandomGrid, max_deg: u32, terms: usize, coeff: i64) -> MPoly {
    let nv = t.nvars();
    let mut f = MPoly::zero(t);
    for _ in 0..terms {
        let mut e = vec![0u32; nv];
        let mut budget = g.range(0, max_deg as i64) as u32;
        for x in e.iter_mut() {
            let k = g.range(0, budget as i64) as u32;
            *x = k;
            budget -= k;
        }
        f.add_term(&e, BigInt::from(g.range(-coeff, coeff)));
    }
    f
}

fn c2_kronecker() -> Outcome {
    let t = single(&["a", "b", "c"]);
    let mut g = RandomGrid::new(2, 10, 3);
    for k in 0..30 {
        let rows: Vec<Vec<MPoly>> = (0..4).map(|_| (0..4).map(|_| random_poly(&t, &mut g, 2, 3, 9)).collect()).collect();
        let caps: Vec<u32> = (0..3)
            .map(|v| rows.iter().map(|row| row.iter().map(|e| e.degree_in(v)).max().unwrap_or(0)).sum())
            .collect();
        let m = PolyMatrix::new(&t, rows).map_err(|e| e.to_string())?;
        let kr = det_kronecker(&m, &caps).map_err(|e| format!("matrix {k}: {e}"))?;
        let co = det_cofactor(&m).map_err(|e| e.to_string())?;
        ensure!(kr == co, "matrix {k}: Kronecker and cofactor determinants differ");
    }
    Ok("30 random 4x4 matrices agree exactly".into())
}

fn c3_ground_truths() -> Outcome {
    let mut g = RandomGrid::new(3, 1000, 3);
    let l = chow_form(&line(), 1, &mut g).map_err(|e| e.to_string())?;
    ensure!(l.poly.to_string() == "u00*u11 - u01*u10", "line gave {}", l.poly);
    let p = chow_form(&point(), 0, &mut g).map_err(|e| e.to_string())?;
    ensure!(p.poly.to_string() == "u00", "point gave {}", p.poly);
    let c = chow_form(&parabola(), 1, &mut g).map_err(|e| e.to_string())?;
    let u = c.poly.vars().clone();
    let a = |j: usize| MPoly::var(&u, j);
    let b = |j: usize| MPoly::var(&u, 3 + j);
    let p0 = &(&a(1) * &b(2)) - &(&a(2) * &b(1));
    let p1 = &(&a(2) * &b(0)) - &(&a(0) * &b(2));
    let p2 = &(&a(0) * &b(1)) - &(&a(1) * &b(0));
    let oracle = (&(&p0 * &p2) - &p1.pow(2)).normalize();
    ensure!(c.poly == oracle, "conic gave {}", c.poly);
    Ok("line, point and conic match exactly".into())
}

fn c4_twisted_cubic(state: &mut Computed) -> Outcome {
    let v = twisted_cubic();
    let mut g = RandomGrid::new(4, 1000, 3);
    let cf = chow_form(&v, 1, &mut g).map_err(|e| e.to_string())?;
    let bound = chow_bounds(&v, 1).degree_bound;
    ensure!(cf.degrees == vec![3, 3], "degrees {:?}", cf.degrees);
    ensure!(cf.degrees.iter().all(|&d| d as u128 <= bound), "degree bound {bound} exceeded");
    let mut r = RandomGrid::new(44, 9, 3);
    let mut incident = 0;
    let mut random_nonzero = 0;
    while incident < 100 {
        let (s, t) = (r.symmetric(), r.symmetric());
        if s == 0 && t == 0 {
            continue;
        }
        let p = [s * s * s, s * s * t, s * t * t, t * t * t];
        let q = [r.symmetric(), r.symmetric(), r.symmetric(), r.symmetric()];
        let c1 = [r.symmetric(), r.symmetric(), r.symmetric(), r.symmetric()];
        let c2 = [r.symmetric(), r.symmetric(), r.symmetric(), r.symmetric()];
        let plane = vec![cross4(p, q, c1).to_vec(), cross4(p, q, c2).to_vec()];
        if chowkit_core::chow::plane_is_degenerate(&plane) {
            continue;
        }
        ensure!(evaluate_on_plane(&cf, &plane).is_zero(), "nonzero on the incident line through {p:?}, {q:?}");
        incident += 1;
    }
    let mut r = RandomGrid::new(45, 1000, 3);
    for _ in 0..100 {
        let plane: Vec<Vec<i64>> = (0..2).map(|_| (0..4).map(|_| r.symmetric()).collect()).collect();
        if !evaluate_on_plane(&cf, &plane).is_zero() {
            random_nonzero += 1;
        }
    }
    ensure!(random_nonzero == 100, "only {random_nonzero}/100 random lines give a nonzero value");
    state.twisted = Some(cf);
    Ok(format!("degrees (3,3) <= {bound}; 100 incident lines vanish, 100 random lines do not"))
}

fn c5_sl_invariance(state: &Computed) -> Outcome {
    let mut g = RandomGrid::new(5, 1000, 3);
    let mut forms = vec![
        ("line", chow_form(&line(), 1, &mut g).map_err(|e| e.to_string())?),
        ("conic", chow_form(&parabola(), 1, &mut g).map_err(|e| e.to_string())?),
    ];
    if let Some(t) = &state.twisted {
        forms.push(("twisted cubic", t.clone()));
    }
    let mut r = RandomGrid::new(55, 3, 3);
    for (name, cf) in &forms {
        for k in 0..20 {
            let m = random_unimodular(cf.degrees.len(), &mut r);
            ensure!(act_on_blocks(&cf.poly, &m) == cf.poly, "{name}: action {k} changed the form");
        }
    }
    Ok(format!("{} Chow forms fixed by 20 unimodular actions each", forms.len()))
}

fn c6_hurwitz() -> Outcome {
    let mut g = RandomGrid::new(6, 1000, 3);
    let h = hurwitz_form(&parabola(), 1, &mut g).map_err(|e| e.to_string())?;
    let u = h.poly.vars().clone();
    let b = |j| MPoly::var(&u, j);
    let oracle = (&b(1).pow(2) - &(&b(0) * &b(2)).scale(&BigInt::from(4))).normalize();
    ensure!(h.poly == oracle, "parabola gave {}", h.poly);
    let mut r = RandomGrid::new(66, 50, 3);
    for _ in 0..20 {
        let (s, t) = (r.symmetric(), r.symmetric());
        // tangent line at (s^2 : s t : t^2)
        ensure!(h.poly.eval_i64(&[t * t, -2 * s * t, s * s]).is_zero(), "parabola tangent not detected");
    }
    let h2 = hurwitz_form(&circle(), 1, &mut g).map_err(|e| e.to_string())?;
    ensure!(h2.poly.to_string() == "u10^2 + u11^2 - u12^2", "circle gave {}", h2.poly);
    for _ in 0..20 {
        let (s, t) = (r.symmetric(), r.symmetric());
        if s == 0 && t == 0 {
            continue;
        }
        // point (t^2 - s^2 : 2 s t : t^2 + s^2) and its tangent (gradient)
        let p = [t * t - s * s, 2 * s * t, t * t + s * s];
        ensure!(h2.poly.eval_i64(&[p[0], p[1], -p[2]]).is_zero(), "circle tangent not detected");
        // a secant through this point and a second one
        let q = [1, 0, 1];
        let sec = cross3(p, q);
        if s != 0 {
            ensure!(!h2.poly.eval_i64(&sec).is_zero(), "secant {sec:?} reported tangent");
        }
    }
    Ok("both dual conics exact; tangents vanish, secants do not".into())
}

fn c7_bitsize(state: &Computed) -> Outcome {
    let mut g = RandomGrid::new(7, 10, 3);
    let mut checked = 0;
    for k in 0..500 {
        let nu = g.range(1, 4) as usize;
        let names: Vec<String> = (0..nu).map(|i| format!("z{i}")).collect();
        let t = VarTable::from_blocks(&[names]).unwrap();
        let tau = g.range(1, 16);
        let coeff = (1i64 << tau) - 1;
        let f = random_poly(&t, &mut g, 6, 6, coeff);
        if f.is_zero() {
            continue;
        }
        if k % 2 == 0 {
            let h = random_poly(&t, &mut g, 6, 6, coeff);
            let delta = f.total_degree().max(h.total_degree());
            let bound = mul_bitsize_bound(f.bitsize(), h.bitsize(), nu, delta);
            ensure!((&f * &h).bitsize() <= bound, "product {k} exceeds {bound}");
        } else {
            let m = g.range(1, 5) as u32;
            let bound = pow_bitsize_bound(f.bitsize(), m, nu, f.total_degree());
            ensure!(f.pow(m).bitsize() <= bound, "power {k} exceeds {bound}");
        }
        checked += 1;
    }
    // degree bounds of computed forms
    let mut g = RandomGrid::new(77, 1000, 3);
    for (name, v, r) in [("line", line(), 1), ("point", point(), 0), ("conic", parabola(), 1)] {
        let cf = chow_form(&v, r, &mut g).map_err(|e| e.to_string())?;
        let b = chow_bounds(&v, r).degree_bound;
        ensure!(cf.degrees.iter().all(|&d| d as u128 <= b), "{name}: Chow degrees {:?} above {b}", cf.degrees);
    }
    if let Some(t) = &state.twisted {
        ensure!(t.degrees.iter().all(|&d| d <= 4), "twisted cubic above d^(n-r)");
    }
    for (name, v) in [("parabola", parabola()), ("circle", circle())] {
        let h = hurwitz_form(&v, 1, &mut g).map_err(|e| e.to_string())?;
        let b = hurwitz_degree_bound(2, 2);
        ensure!(h.degrees.iter().all(|&d| d as u128 <= b), "{name}: Hurwitz degrees above {b}");
    }
    let v = conic_product();
    let cf = multi_chow_form(&v, 2, &[2, 1], &mut g).map_err(|e| e.to_string())?;
    let degrees: Vec<Vec<u32>> = v.polys().iter().map(|f| f.mdeg().blocks).collect();
    let b = multi_bounds(&v.n(), &degrees, 2, &[2, 1]).map_err(|e| e.to_string())?;
    ensure!(cf.poly.total_degree() as u128 <= b.total_degree, "multigraded Chow form above B_r");
    for (d, bd) in cf.degrees.iter().zip(&b.block_degrees) {
        ensure!((*d as u128) <= *bd, "multigraded block degree {d} above {bd}");
    }
    Ok(format!("{checked} product/power instances within bounds; all fixture forms within degree bounds"))
}

fn c8_figures(state: &mut Vec<(BTreeSet<Vec<usize>>, BTreeSet<Vec<usize>>, BTreeSet<Vec<usize>>)>) -> Outcome {
    let v = conic_product();
    let n = v.n();
    let supplied = vec![0, 1, 1, 2];
    let mut g = RandomGrid::new(8, 1000, 3);
    let supp = support(&n, &supplied).map_err(|e| e.to_string())?;
    ensure!(supp == formats(&[[2, 2]]), "support {supp:?}");
    let chow = chow_hypersurface_formats(&n, &supplied).map_err(|e| e.to_string())?;
    ensure!(chow == formats(&[[2, 1], [1, 2]]), "Chow formats {chow:?}");
    let hurwitz =
        hurwitz_hypersurface_formats(&n, &supplied, |a| multidegree(&v, a, &mut g)).map_err(|e| e.to_string())?;
    ensure!(hurwitz == formats(&[[1, 3], [2, 2], [3, 1]]), "Hurwitz formats {hurwitz:?}");
    let mc = projection_dim_table(&v, &mut g).map_err(|e| e.to_string())?;
    ensure!(mc == supplied, "Monte Carlo table {mc:?}");
    state.push((supp, chow, hurwitz));
    Ok("support {(2,2)}, Chow {(2,1),(1,2)}, Hurwitz {(1,3),(2,2),(3,1)}; Monte Carlo table agrees".into())
}

fn c9_multidegrees() -> Outcome {
    let mut g = RandomGrid::new(9, 1000, 3);
    let m = multidegree(&conic_product(), &[2, 2], &mut g).map_err(|e| e.to_string())?;
    ensure!(m == 4, "product multidegree {m}");
    for n in [1, 2] {
        let m = multidegree(&inner_product(n), &[1, 0], &mut g).map_err(|e| e.to_string())?;
        ensure!(m == 1, "inner product n = {n}: mdeg {m}");
    }
    Ok("product 4; inner product (1,0) = 1 for n = 1, 2".into())
}

fn down_closure(points: impl IntoIterator<Item = Vec<usize>>) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    let mut stack: Vec<Vec<usize>> = points.into_iter().collect();
    while let Some(p) = stack.pop() {
        if out.insert(p.clone()) {
            for j in 0..p.len() {
                if p[j] > 0 {
                    let mut q = p.clone();
                    q[j] -= 1;
                    stack.push(q);
                }
            }
        }
    }
    out
}

fn shifted(a: &[usize], n: &[usize], up: bool) -> Vec<Vec<usize>> {
    (0..a.len())
        .filter(|&j| if up { a[j] < n[j] } else { a[j] > 0 })
        .map(|j| {
            let mut b = a.to_vec();
            if up {
                b[j] += 1;
            } else {
                b[j] -= 1;
            }
            b
        })
        .collect()
}

fn c10_polymatroids(fig: &[(BTreeSet<Vec<usize>>, BTreeSet<Vec<usize>>, BTreeSet<Vec<usize>>)]) -> Outcome {
    let mut g = RandomGrid::new(10, 10, 3);
    for k in 0..200 {
        let l = g.range(1, 3) as usize;
        let n: Vec<usize> = (0..l).map(|_| g.range(0, 4) as usize).collect();
        let p = Polymatroid::new(n.clone(), random_submodular(&n, &mut g)).map_err(|e| e.to_string())?;
        let d = p.dual();
        ensure!(d.dual() == p, "table {k}: (P*)* != P");
        let reflected: BTreeSet<Vec<usize>> =
            p.bases().iter().map(|b| b.iter().zip(&n).map(|(b, n)| n - b).collect()).collect();
        ensure!(d.bases() == reflected, "table {k}: dual bases are not n - bases");
        if p.rank() >= 1 {
            let low = p.points().iter().flat_map(|a| shifted(a, &n, false)).collect::<Vec<_>>();
            ensure!(p.truncate().unwrap().points() == down_closure(low), "table {k}: truncation point set");
        }
        if d.rank() >= 1 {
            let e = p.elongate().unwrap();
            ensure!(e == d.truncate().unwrap().dual(), "table {k}: elongation != dual-truncate-dual");
            let high = p.points().iter().flat_map(|a| shifted(a, &n, true)).chain(p.points()).collect::<Vec<_>>();
            ensure!(e.points() == down_closure(high), "table {k}: elongation point set");
        }
    }
    // the format correspondence on the figure fixture
    let sp = Polymatroid::new(vec![3, 3], vec![0, 1, 1, 2]).unwrap().dual();
    let (supp, chow, hurwitz) = fig.first().ok_or("figure fixture unavailable")?;
    ensure!(&sp.bases() == supp, "support != dual bases");
    let t = sp.truncate().unwrap();
    ensure!(&t.bases() == chow, "Chow formats != truncation bases");
    ensure!(&t.elongate().unwrap().bases() == hurwitz, "Hurwitz formats != elongation bases");
    Ok("200 tables: duality, truncation, elongation identities; figure formats match".into())
}

fn c11_gcp_rescue() -> Outcome {
    let t = VarTable::from_blocks(&[vec!["x0", "x1", "x2"], vec!["u0", "u1", "u2"]]).unwrap();
    let v = |i| MPoly::var(&t, i);
    let f1 = &(&v(0) * &v(1)) - &v(2).pow(2);
    let f2 = &v(2) * &(&v(0) - &v(1));
    let u = (0..3).fold(MPoly::zero(&t), |acc, j| &acc + &(&v(3 + j) * &v(j)));
    let sys = MacaulaySystem::with_params(vec![f1, f2, u], 0, vec![1]).map_err(|e| e.to_string())?;
    let mut g = RandomGrid::new(11, 1000, 3);
    match resultant_dense(&sys, &mut g) {
        Err(Error::Precondition(_)) => {}
        other => return Err(format!("resultant_dense did not fail: {other:?}")),
    }
    let res = gcp_resultant(&sys, &[0, 1], &mut g).map_err(|e| e.to_string())?;
    ensure!(!res.is_zero(), "GCP returned zero");
    let zeros = [[1i64, 0, 0], [0, 1, 0], [1, 1, 1], [1, 1, -1]];
    let mut r = RandomGrid::new(111, 20, 3);
    for k in 0..50 {
        let uu: [i64; 3] = if k % 2 == 0 {
            let p = zeros[r.range(0, 3) as usize];
            cross3(p, [r.symmetric(), r.symmetric(), r.symmetric()])
        } else {
            [r.symmetric(), r.symmetric(), r.symmetric()]
        };
        if uu == [0, 0, 0] {
            continue;
        }
        let solvable = zeros.iter().any(|p| p.iter().zip(&uu).map(|(a, b)| a * b).sum::<i64>() == 0);
        ensure!(res.eval_i64(&uu).is_zero() == solvable, "sample {uu:?}: oracle says {solvable}");
    }
    Ok("dense quotient fails (det M0 = 0); GCP agrees with the oracle on 50 samples".into())
}

fn c12_determinism() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let runs: &[(&str, &str)] = &[
        ("chow", "line.txt"),
        ("chow", "point.txt"),
        ("chow", "conic.txt"),
        ("chow", "twisted_cubic.txt"),
        ("hurwitz", "conic.txt"),
        ("hurwitz", "circle.txt"),
        ("multichow", "conic_product.txt"),
        ("multichow", "bilinear.txt"),
        ("formats", "conic_product.txt"),
        ("support", "bilinear.txt"),
        ("resultant", "sylvester.txt"),
        ("det", "matrix.txt"),
        ("bounds", "twisted_cubic.txt"),
    ];
    let exec = |args: &[&str]| {
        Process::new(env!("CARGO_BIN_EXE_chowkit")).args(args).output().map_err(|e| e.to_string())
    };
    for (cmd, file) in runs {
        let path = dir.join(file);
        let path = path.to_str().unwrap();
        let a = exec(&["--seed", "3", cmd, path])?;
        let b = exec(&["--seed", "3", cmd, path])?;
        ensure!(a.status.success(), "{cmd} {file} failed: {}", String::from_utf8_lossy(&a.stderr));
        ensure!(a.stdout == b.stdout, "{cmd} {file}: outputs differ");
    }
    for op in ["check", "dual", "truncate", "elongate", "bases", "points"] {
        let path = dir.join("fig1.json");
        let a = exec(&["polymatroid", op, path.to_str().unwrap()])?;
        let b = exec(&["polymatroid", op, path.to_str().unwrap()])?;
        ensure!(a.status.success() && a.stdout == b.stdout, "polymatroid {op}: outputs differ");
    }
    Ok(format!("{} fixture runs byte-identical", runs.len() + 6))
}

// ---------------------------------------------------------------------------

fn main() {
    let mut state = Computed { twisted: None };
    let mut fig = Vec::new();
    let mut failures = 0;
    let mut report = |id: u32, name: &str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {name} ({secs:.1}s): {detail}"),
            Err(why) => {
                failures += 1;
                println!("criterion {id:>2} FAIL  {name} ({secs:.1}s): {why}");
            }
        }
    };
    report(1, "Sylvester oracle", &mut c1_sylvester);
    report(2, "Kronecker determinant", &mut c2_kronecker);
    report(3, "Chow ground truths", &mut c3_ground_truths);
    report(4, "twisted cubic", &mut || c4_twisted_cubic(&mut state));
    report(5, "SL-invariance", &mut || c5_sl_invariance(&state));
    report(6, "Hurwitz dual conics", &mut c6_hurwitz);
    report(7, "bitsize and degree bounds", &mut || c7_bitsize(&state));
    report(8, "figures 1-2 formats", &mut || c8_figures(&mut fig));
    report(9, "multidegrees", &mut c9_multidegrees);
    report(10, "polymatroid identities", &mut || c10_polymatroids(&fig));
    report(11, "GCP rescue", &mut c11_gcp_rescue);
    report(12, "CLI determinism", &mut c12_determinism);
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all 12 criteria passed");
}

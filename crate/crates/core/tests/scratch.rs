//! Temporary numeric probe (will be replaced by the real suites).

use gagliardo::*;

#[test]
#[ignore]
fn probe_1d_ladders() {
    let spec = QuadratureSpec::<f64>::default();
    let g = TestFunction::tent(&[0.0], 1.0).unwrap();
    for p in [1.0, 2.0] {
        for s in [0.5, 0.9, 0.95, 0.975, 0.99] {
            let e = gagliardo_1d(&g, s, p, &spec).unwrap();
            println!(
                "p={p} s={s}: value={:.8} (1-s)v={:.8} err={:.2e}",
                e.value,
                (1.0 - s) * e.value,
                e.std_error
            );
        }
        let rep = verify_bbm_1d(&g, p, &default_bbm_ladder(), &spec).unwrap();
        println!(
            "BBM p={p}: fitted={:.6} target={:.6} rel={:.4e} residual={:.2e} verdict={:?}",
            rep.fitted_limit, rep.target, rep.rel_error, rep.fit_residual, rep.verdict
        );
        let rep = verify_ms_1d(&g, p, &default_ms_ladder(), &spec).unwrap();
        println!(
            "MS  p={p}: fitted={:.6} target={:.6} rel={:.4e} residual={:.2e} verdict={:?}",
            rep.fitted_limit, rep.target, rep.rel_error, rep.fit_residual, rep.verdict
        );
    }
}

#[test]
#[ignore]
fn probe_2d_direct_vs_bp() {
    let spec = QuadratureSpec::<f64>::default();
    let f = TestFunction::smooth_bump(&[0.0, 0.0], 1.0).unwrap();
    let ball = ConvexBody::euclidean_ball(2).unwrap();
    let kbox = ConvexBody::axis_box(&[1.0, 1.0]).unwrap();
    for (name, k) in [("ball", &ball), ("box", &kbox)] {
        for (s, p) in [(0.5, 1.0), (0.5, 2.0)] {
            let t0 = std::time::Instant::now();
            let d = seminorm_direct(&f, k, s, p, &spec).unwrap();
            let td = t0.elapsed();
            let t1 = std::time::Instant::now();
            let b = seminorm_via_bp(&f, k, s, p, &spec).unwrap();
            let tb = t1.elapsed();
            println!(
                "{name} s={s} p={p}: direct={:.8}+-{:.1e} ({td:?})  bp={:.8}+-{:.1e} ({tb:?})  reldiff={:.2e}",
                d.value,
                d.std_error,
                b.value,
                b.std_error,
                (d.value - b.value).abs() / d.value
            );
        }
    }
}

#[test]
#[ignore]
fn probe_2d_bbm_ladder() {
    let spec = QuadratureSpec::<f64>::default();
    let f = TestFunction::smooth_bump(&[0.0, 0.0], 1.0).unwrap();
    let ball = ConvexBody::euclidean_ball(2).unwrap();
    let t0 = std::time::Instant::now();
    let rep = verify_bbm_limit(&f, &ball, 2.0, &default_bbm_ladder(), &spec).unwrap();
    println!(
        "BBM ball p=2: fitted={:.6} target={:.6} rel={:.4e} residual={:.2e} verdict={:?} in {:?}",
        rep.fitted_limit,
        rep.target,
        rep.rel_error,
        rep.fit_residual,
        rep.verdict,
        t0.elapsed()
    );
    if let Some(alt) = &rep.alt {
        println!("  bp fitted={:.6} residual={:.2e}", alt.fitted_limit, alt.fit_residual);
    }
    for s in &rep.samples {
        println!("  s={} scaled={:.6} sigma={:.2e}", s.s, s.scaled_value, s.std_error);
    }
    let t0 = std::time::Instant::now();
    let rep = verify_ms_limit(&f, &ball, 1.0, &default_ms_ladder(), &spec).unwrap();
    println!(
        "MS ball p=1: fitted={:.6} target={:.6} rel={:.4e} residual={:.2e} verdict={:?} in {:?}",
        rep.fitted_limit,
        rep.target,
        rep.rel_error,
        rep.fit_residual,
        rep.verdict,
        t0.elapsed()
    );
    for s in &rep.samples {
        println!("  s={} scaled={:.6} sigma={:.2e}", s.s, s.scaled_value, s.std_error);
    }
}

#[test]
#[ignore]
fn probe_bp_high_s() {
    let spec = QuadratureSpec::<f64>::default();
    let f = TestFunction::smooth_bump(&[0.0, 0.0], 1.0).unwrap();
    let ball = ConvexBody::euclidean_ball(2).unwrap();
    for s in [0.5, 0.9, 0.95, 0.99] {
        let d = seminorm_direct(&f, &ball, s, 2.0, &spec).unwrap();
        let b = seminorm_via_bp(&f, &ball, s, 2.0, &spec).unwrap();
        println!(
            "s={s}: direct={:.6} bp={:.6} ratio={:.4}",
            d.value,
            b.value,
            b.value / d.value
        );
    }
}

#[test]
#[ignore]
fn probe_line_psi() {
    // psi(h) = D_1(h)/h^p for the 1D smooth bump restriction, computed the
    // same way the line engine does (term1 + complement band)
    let f = TestFunction::smooth_bump(&[0.0], 1.0).unwrap();
    let p = 2.0f64;
    let (l0, l1) = (-1.0f64, 1.0f64);
    let len = l1 - l0;
    // reference panels like the engine: spatial_panels x GL6 on [0,1]
    let refs: Vec<(f64, f64)> = {
        let spec = QuadratureSpec::<f64>::default();
        gagliardo::quad::line_nodes(0.0, 1.0, spec.spatial_panels, 6)
    };
    let eval = |lam: f64| {
        f.eval(&Vector::from_slice(1, &[lam]).unwrap()).unwrap()
    };
    let mut gp = 0.0;
    for &(t, w) in &refs {
        gp += w * len * eval(l0 + len * t).powi(2);
    }
    // true grad energy for comparison
    let spec = QuadratureSpec::<f64>::default();
    let ge = sobolev_seminorm_pow(&f, p, &spec).unwrap();
    println!("gp_pow={gp:.10}, grad energy G={ge:.10}");
    for k in 1..=10 {
        let h = len * 0.1f64.powi(k);
        let mut term1 = 0.0;
        for &(t, w) in &refs {
            let lam = l0 + len * t;
            term1 += w * len * (eval(lam + h) - eval(lam)).powi(2);
        }
        let blen = len - h;
        let mut inner = 0.0;
        for &(t, w) in &refs {
            inner += w * blen * eval(l0 + h + blen * t).powi(2);
        }
        let band = gp - inner;
        println!(
            "h=1e-{k}: term1/h^2={:.6e} band/h^2={:.6e} psi={:.6e}",
            term1 / (h * h),
            band / (h * h),
            (term1 + band) / (h * h)
        );
    }
}

#[test]
#[ignore]
fn probe_anisotropic_bbm() {
    let spec = QuadratureSpec::<f64>::default();
    let f = TestFunction::smooth_bump(&[0.0, 0.0], 1.0).unwrap();
    let kbox = ConvexBody::axis_box(&[1.0, 1.0]).unwrap();
    let cross = ConvexBody::sym_polytope(2, &[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
    for (name, k) in [("box", &kbox), ("cross", &cross)] {
        let t0 = std::time::Instant::now();
        let rep = verify_bbm_limit(&f, k, 1.0, &default_bbm_ladder(), &spec).unwrap();
        println!(
            "BBM {name} p=1: fitted={:.6} target={:.6} rel={:.4e} residual={:.2e} verdict={:?} in {:?}",
            rep.fitted_limit, rep.target, rep.rel_error, rep.fit_residual, rep.verdict, t0.elapsed()
        );
        if let Some(alt) = &rep.alt {
            println!("   bp fitted={:.6} residual={:.2e}", alt.fitted_limit, alt.fit_residual);
        }
    }
    let t0 = std::time::Instant::now();
    let rep = verify_ms_limit(&f, &kbox, 1.0, &default_ms_ladder(), &spec).unwrap();
    println!(
        "MS box p=1: fitted={:.6} target={:.6} rel={:.4e} verdict={:?} in {:?}",
        rep.fitted_limit, rep.target, rep.rel_error, rep.verdict, t0.elapsed()
    );
}

#[test]
#[ignore]
fn probe_3d() {
    let spec = QuadratureSpec::<f64> {
        angular_points: 32,
        spatial_panels: 5,
        radial_panels: 10,
        ..QuadratureSpec::default()
    };
    let f = TestFunction::smooth_bump(&[0.0, 0.0, 0.0], 1.0).unwrap();
    let ball = ConvexBody::euclidean_ball(3).unwrap();
    let t0 = std::time::Instant::now();
    let d = seminorm_direct(&f, &ball, 0.5, 2.0, &spec).unwrap();
    let td = t0.elapsed();
    let t1 = std::time::Instant::now();
    let b = seminorm_via_bp(&f, &ball, 0.5, 2.0, &spec).unwrap();
    println!(
        "3d ball s=0.5 p=2: direct={:.6}+-{:.1e} ({td:?}) bp={:.6}+-{:.1e} ({:?}) reldiff={:.2e}",
        d.value, d.std_error, b.value, b.std_error, t1.elapsed(),
        (d.value - b.value).abs() / d.value
    );
}

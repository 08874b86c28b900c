//! Verification suites behind the command-line tasks. Each takes a
//! configuration and a sampler and returns named checks plus data.

use crate::config::ModelConfig;
use crate::contour::taylor_coefficients;
use crate::eqg::{self, OperatorQuadruple};
use crate::error::{Error, Result};
use crate::gaudin::{self, GaudinModel, LambdaDiffOp};
use crate::irf;
use crate::params::ModelParams;
use crate::report::{Check, Outcome};
use crate::sample::{Sampler, SAMPLE_MARGIN};
use crate::spaces::{self, EllipticPoly};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

const I: C64 = C64 { re: 0.0, im: 1.0 };

fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

/// Quasi-periodicity, oddness and derivatives of θ at random points, the
/// derivatives checked against Cauchy-integral Taylor coefficients.
pub fn theta_kernel(cfg: &ModelConfig, s: &mut Sampler) -> Result<Outcome> {
    let th = cfg.theta()?;
    let tau = th.tau();
    let (mut q1, mut qt, mut odd, mut jet) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..cfg.theta.samples {
        let z = s.generic(C64::new(0.0, 0.0), 2.0, tau.im, |z| th.lattice().dist(z) > 0.3);
        let v = th.th(z);
        let a = th.th(z + 1.0);
        q1 = q1.max((a + v).norm() / a.norm().max(v.norm()));
        let b = th.th(z + tau);
        let m = -(-I * PI * tau - I * 2.0 * PI * z).exp() * v;
        qt = qt.max((b - m).norm() / b.norm().max(m.norm()));
        odd = odd.max((th.th(-z) + v).norm() / v.norm());
        let oracle = taylor_coefficients(|w| th.th(w), z, 0.25, 64, 3);
        let j = th.theta_jet(z, 3)?;
        let mut fact = 1.0;
        for d in 0..=3 {
            if d > 0 {
                fact *= d as f64;
            }
            let scale = oracle.iter().map(|x| x.norm()).fold(0.0, f64::max) * fact;
            jet = jet.max((j.derivative_at(d) - oracle[d] * fact).norm() / scale);
        }
    }
    let tol = cfg.tol(1e-10);
    let mut out = Outcome::default();
    out.push(Check::upper("theta.quasi_periodicity_1", q1, tol));
    out.push(Check::upper("theta.quasi_periodicity_tau", qt, tol));
    out.push(Check::upper("theta.oddness", odd, tol));
    out.push(Check::upper("theta.derivative_vs_jet", jet, tol));
    let values: Vec<serde_json::Value> = cfg
        .theta
        .points
        .iter()
        .map(|&z| {
            let d = th.th_derivs(z, 2);
            serde_json::json!({
                "z": pair(z),
                "theta": pair(d[0]),
                "theta_prime": pair(d[1]),
                "theta_second": pair(d[2]),
                "zeta_bar": th.zeta_bar(z).ok().map(pair),
                "wp_bar": th.wp_bar(z).ok().map(pair),
            })
        })
        .collect();
    out.put("values", values);
    let rows = (0..=200)
        .map(|k| {
            let t = k as f64 / 200.0;
            let z = C64::new(t, 0.0) + tau * 0.25;
            let v = th.th(z);
            vec![t, z.re, z.im, v.re, v.im]
        })
        .collect();
    out.table("theta_line", vec!["t", "re_z", "im_z", "re_theta", "im_theta"], rows);
    Ok(out)
}

/// Interpolation in `Θ_k(χ)`, zero counts and the zero-sum constraint for
/// `k = 1..max_level`.
pub fn theta_spaces(cfg: &ModelConfig, s: &mut Sampler) -> Result<Outcome> {
    let th = cfg.theta()?;
    let tau = th.tau();
    let lat = *th.lattice();
    let (mut interp, mut count_poly, mut count_interp, mut zero_sum) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for k in 1..=cfg.theta.max_level {
        let zeros: Vec<C64> = (0..k).map(|_| s.complex(C64::new(0.0, 0.0), 2.0, 2.0)).collect();
        let p = EllipticPoly::new(&lat, s.complex(C64::new(0.0, 0.0), 1.0, 1.0), &zeros);
        let chi = spaces::character_of(&p, tau);
        let nodes = spaces::generic_nodes(&th, k, &chi, s, &[]);
        let vals: Vec<C64> = nodes.iter().map(|z| p.eval(&th, *z)).collect();
        let f = spaces::interpolate(&th, k, &chi, &nodes, &vals)?;
        let pts: Vec<C64> = (0..5).map(|_| s.complex(tau * 0.5 + 0.5, 0.5, 0.5 * tau.im)).collect();
        let truth: Vec<C64> = pts.iter().map(|z| p.eval(&th, *z)).collect();
        let scale = truth.iter().chain(&vals).map(|v| v.norm()).fold(0.0, f64::max);
        for (z, t) in pts.iter().zip(&truth) {
            interp = interp.max((f.eval(&th, *z) - t).norm() / scale);
        }
        count_poly = count_poly.max((spaces::zero_count(&p, &th) - k as f64).norm());
        // a generic element of Θ_k(χ), known only through its values
        let vals: Vec<C64> = (0..k).map(|_| s.complex(C64::new(0.0, 0.0), 1.0, 1.0)).collect();
        let g = spaces::interpolate(&th, k, &chi, &nodes, &vals)?;
        let (n, sum) = spaces::contour_zero_moments(&th, &|z| g.eval_d(&th, z));
        count_interp = count_interp.max((n - k as f64).norm());
        zero_sum = zero_sum.max(lat.dist(sum - chi.phi(tau) - spaces::delta(tau) * k as f64));
    }
    let mut out = Outcome::default();
    out.push(Check::upper("spaces.interpolation_exactness", interp, cfg.tol(1e-9)));
    out.push(Check::upper("spaces.zero_count_polynomial", count_poly, 1e-6));
    out.push(Check::upper("spaces.zero_count_interpolant", count_interp, 1e-6));
    out.push(Check::upper("spaces.zero_sum", zero_sum, cfg.tol(1e-8)));
    Ok(out)
}

/// `theta eval`: both of the above.
pub fn theta_eval(cfg: &ModelConfig, s: &mut Sampler) -> Result<Outcome> {
    let mut out = theta_kernel(cfg, s)?;
    out.extend(theta_spaces(cfg, s)?);
    Ok(out)
}

fn qybe_point(params: &ModelParams, s: &mut Sampler) -> (C64, C64, C64) {
    let lat = *params.th().lattice();
    let e2 = params.eta() * 2.0;
    let lambda = eqg::generic_lambda(params, s);
    let ok = |u: C64| lat.dist(u) > SAMPLE_MARGIN && lat.dist(u - e2) > SAMPLE_MARGIN;
    loop {
        let z = s.complex(C64::new(0.0, 0.0), 0.5, 0.5 * params.tau().im);
        let w = s.complex(C64::new(0.0, 0.0), 0.5, 0.5 * params.tau().im);
        if ok(z) && ok(w) && ok(z - w) && (-6..=6).all(|k| lat.dist(lambda + z + e2 * k as f64) > SAMPLE_MARGIN) {
            return (z, w, lambda);
        }
    }
}

/// `eqg rll-check`: dynamical Yang-Baxter equation, twist identity, the
/// sixteen RLL relations, the residue-sum identity behind them and the
/// quantum determinant.
pub fn eqg_rll(cfg: &ModelConfig, s: &mut Sampler) -> Result<Outcome> {
    let params = cfg.params()?;
    let th = params.th();
    let eta = params.eta();
    let mut out = Outcome::default();
    let (mut qybe, mut twist) = (0.0f64, 0.0f64);
    for _ in 0..cfg.eqg.qybe_samples {
        let (z, w, l) = qybe_point(&params, s);
        qybe = qybe.max(eqg::qybe_residual(th, eta, z, w, l));
        twist = twist.max(eqg::ktwist_check(th, eta, z, l)?);
    }
    out.push(Check::upper("eqg.qybe", qybe, cfg.tol(1e-9)));
    out.push(Check::upper("eqg.k_twist", twist, cfg.tol(1e-12)));

    let q = OperatorQuadruple::new(&params);
    let mut rll = 0.0f64;
    let mut reports = Vec::new();
    for _ in 0..cfg.eqg.samples {
        let (z, w, l) = (eqg::generic_z(&params, s), eqg::generic_z(&params, s), eqg::generic_lambda(&params, s));
        let r = eqg::rll_residual(&q, z, w, l)?;
        rll = rll.max(r.max_residual);
        reports.push(r);
    }
    out.push(Check::upper("eqg.rll", rll, cfg.tol(1e-9)));
    out.put("rll", &reports);

    let (mut res, mut per) = (0.0f64, 0.0f64);
    for i in 0..params.n() {
        let x: Vec<C64> = (0..params.n()).map(|_| s.complex(C64::new(0.0, 0.0), 0.5, 0.4)).collect();
        let probe = s.complex(C64::new(0.0, 0.0), 0.5, 0.4);
        let r = eqg::residue_sum_check(&params, &x, i, probe);
        res = res.max(r.relative);
        per = per.max(r.periodicity);
    }
    out.push(Check::upper("eqg.residue_sum", res, cfg.tol(1e-10)));
    out.push(Check::upper("eqg.residue_function_periodicity", per, cfg.tol(1e-10)));

    let (z, w, l) = (eqg::generic_z(&params, s), eqg::generic_z(&params, s), eqg::generic_lambda(&params, s));
    let d = eqg::determinant_check(&q, z, w, l);
    out.push(Check::upper("eqg.determinant_scalar", d.scalar, cfg.tol(1e-10)));
    out.push(Check::upper("eqg.determinant_central", d.commutators.iter().cloned().fold(0.0, f64::max), cfg.tol(1e-10)));
    Ok(out)
}

/// `eqg hw-check`: highest-weight vector, restrictions and, for one site,
/// the closed-form operators.
pub fn eqg_hw(cfg: &ModelConfig, s: &mut Sampler) -> Result<Outcome> {
    let params = cfg.params()?;
    let q = OperatorQuadruple::new(&params);
    let mut out = Outcome::default();
    let (mut c_ann, mut a_ev, mut d_ev) = (0.0f64, 0.0f64, 0.0f64);
    let mut reports = Vec::new();
    for _ in 0..cfg.eqg.samples {
        let r = eqg::highest_weight_check(&q, eqg::generic_z(&params, s), eqg::generic_lambda(&params, s))?;
        c_ann = c_ann.max(r.c_annihilates);
        a_ev = a_ev.max(r.a_eigen).max(r.normalized_a);
        d_ev = d_ev.max(r.d_eigen).max(r.normalized_d);
        reports.push(r);
    }
    out.push(Check::upper("eqg.hw.c_annihilates", c_ann, cfg.tol(1e-12)));
    out.push(Check::upper("eqg.hw.a_eigenvalue", a_ev, cfg.tol(1e-10)));
    out.push(Check::upper("eqg.hw.d_eigenvalue", d_ev, cfg.tol(1e-10)));
    out.put("highest_weight", &reports);

    let r = eqg::restriction_check(&q, s);
    out.push(Check::upper("eqg.restriction.b_forbidden", r.b_forbidden, cfg.tol(1e-12)));
    out.push(Check::upper("eqg.restriction.c_forbidden", r.c_forbidden, cfg.tol(1e-12)));
    out.push(Check::upper("eqg.restriction.s1", r.s1_b.max(r.s1_c), cfg.tol(1e-12)));
    out.put("restriction", &r);

    if params.n() == 1 {
        let mut worst = 0.0f64;
        for _ in 0..cfg.eqg.samples {
            let r = eqg::single_site_check(&q, eqg::generic_z(&params, s), eqg::generic_lambda(&params, s))?;
            worst = r.residuals.iter().cloned().fold(worst, f64::max);
        }
        out.push(Check::upper("eqg.single_site_closed_form", worst, cfg.tol(1e-10)));
    }
    Ok(out)
}

/// `gaudin check`: commutativity of `H₀..H_n`, `ΣH_j = 0`, the
/// decomposition of `S(z)` and `[S(z), S(w)] = 0`, all on jets.
pub fn gaudin_check(cfg: &ModelConfig, s: &mut Sampler) -> Result<Outcome> {
    let params = cfg.params()?;
    let model = GaudinModel::new(&params)?;
    let g = &cfg.gaudin;
    let hs = model.hamiltonians();
    let u = model.random_jet(s, g.lambda0, g.jet_degree);
    let mut out = Outcome::default();
    let mut comm = 0.0f64;
    for i in 0..hs.len() {
        for j in 0..i {
            comm = comm.max(gaudin::commutator_residual(&hs[i], &hs[j], &u)?);
        }
    }
    out.push(Check::upper("gaudin.hamiltonians_commute", comm, cfg.tol(1e-9)));
    let sum = LambdaDiffOp::combine((1..hs.len()).map(|j| (C64::new(1.0, 0.0), hs[j].clone())).collect());
    out.push(Check::upper("gaudin.sum_vanishes", sum.apply(&u)?.norm() / u.norm(), cfg.tol(1e-9)));
    let (mut dec, mut alt) = (0.0f64, 0.0f64);
    for &z in &g.z {
        let s_op = model.s_operator(z)?;
        dec = dec.max(gaudin::difference_residual(&s_op, &model.s_decomposition(z)?, &u)?);
        alt = alt.max(gaudin::difference_residual(&s_op, &model.s_operator_alternative(z)?, &u)?);
    }
    out.push(Check::upper("gaudin.s_decomposition", dec, cfg.tol(1e-9)));
    out.push(Check::upper("gaudin.s_alternative_form", alt, cfg.tol(1e-9)));
    let mut sc = 0.0f64;
    for i in 0..g.z.len() {
        for j in 0..i {
            sc = sc.max(gaudin::commutator_residual(&model.s_operator(g.z[i])?, &model.s_operator(g.z[j])?, &u)?);
        }
    }
    out.push(Check::upper("gaudin.s_commute", sc, cfg.tol(1e-9)));
    out.put("casimirs", model.casimirs());
    out.put("zero_weight_dim", model.zero_weight().dim());
    Ok(out)
}

/// `gaudin bethe`: solve the Bethe equations and test the Bethe vector.
pub fn gaudin_bethe(cfg: &ModelConfig, s: &mut Sampler) -> Result<Outcome> {
    let params = cfg.params()?;
    if params.total_weight() % 2 != 0 || params.total_weight() == 0 {
        return Err(Error::InvalidParams(format!("ΣΛ_i = {} must be a positive even number for the Bethe ansatz", params.total_weight())));
    }
    let model = GaudinModel::new(&params)?;
    let g = &cfg.gaudin;
    let opts = gaudin::BetheOptions::default();
    let sol = if g.seeds.is_empty() {
        gaudin::solve_gaudin_bethe_multistart(&model, g.c, s, g.attempts, &opts)
    } else {
        gaudin::solve_gaudin_bethe(&model, g.c, &g.seeds, &opts)
    };
    let mut out = Outcome::default();
    let sol = match sol {
        Ok(sol) => sol,
        Err(e) if e.is_config() => return Err(e),
        Err(e) => {
            out.push(Check::failed("gaudin.bethe.solve"));
            out.put("error", e.to_string());
            return Ok(out);
        }
    };
    out.push(Check::upper("gaudin.bethe.equations", sol.residual, cfg.tol(1e-10)));
    let lambdas: Vec<C64> = (0..g.lambdas).map(|_| eqg::generic_lambda(&params, s)).collect();
    let r = gaudin::bethe_eigen_report(&model, &sol, gaudin::FReading::Lambda, &lambdas, &g.z)?;
    out.push(Check::upper("gaudin.bethe.eigen_residual", r.eigen_residual, cfg.tol(1e-8)));
    out.push(Check::upper("gaudin.bethe.eps_sum", r.eps_sum, cfg.tol(1e-9)));
    out.push(Check::upper("gaudin.bethe.s_residual", r.s_residual, cfg.tol(1e-8)));
    out.put("solution", &sol);
    out.put("eigenvalues", &r.eps);
    Ok(out)
}

fn matrix_json(m: &crate::linalg::CMat) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| pair(m[(i, j)])).collect()).collect()
}

/// `irf build`: the two constructions of the transfer matrix, their
/// agreement and commutativity.
pub fn irf_build(cfg: &ModelConfig, s: &mut Sampler) -> Result<Outcome> {
    let params = cfg.params()?;
    params.check_irf_generic()?;
    let t = &cfg.irf;
    let mut out = Outcome::default();
    let z = match t.z {
        Some(z) => z,
        None => irf::generic_spectral(&params, s),
    };
    let tp = irf::build_t_irf_paths(&params, z)?;
    out.put("z", pair(z));
    out.put("t_paths", matrix_json(&tp));
    out.put("t_sov", matrix_json(&irf::build_t_irf_sov(&params, z)?));

    let d = irf::dual_construction_check(&params, s, 3, t.samples)?;
    out.push(Check::upper("irf.dual_construction", d.residual, cfg.tol(1e-9)));
    out.push(Check::upper("irf.sov_forbidden_reads", d.forbidden, cfg.tol(1e-12)));
    out.put("dual", &d);

    let (mut cp, mut cs) = (0.0f64, 0.0f64);
    for _ in 0..t.pairs {
        let (z, w) = (irf::generic_spectral(&params, s), irf::generic_spectral(&params, s));
        cp = cp.max(irf::commutator_residual(&irf::build_t_irf_paths(&params, z)?, &irf::build_t_irf_paths(&params, w)?));
        cs = cs.max(irf::commutator_residual(&irf::build_t_irf_sov(&params, z)?, &irf::build_t_irf_sov(&params, w)?));
    }
    out.push(Check::upper("irf.commuting_paths", cp, cfg.tol(1e-9)));
    out.push(Check::upper("irf.commuting_sov", cs, cfg.tol(1e-9)));
    let diag = (0..tp.nrows()).map(|i| tp[(i, i)].norm()).fold(0.0, f64::max);
    out.push(Check::upper("irf.zero_diagonal", diag, 0.0));
    Ok(out)
}

/// `irf spectrum`: certify every eigenpair of the transfer matrix.
pub fn irf_spectrum(cfg: &ModelConfig, s: &mut Sampler) -> Result<Outcome> {
    let params = cfg.params()?;
    let opts = irf::SpectrumOptions { tol: cfg.tol(1e-8), gap_tol: cfg.tolerances.gap_tol, ..Default::default() };
    let r = irf::certify_spectrum(&params, s, &opts)?;
    let mut out = Outcome::default();
    let mut warnings = Vec::new();
    for c in &r.certificates {
        let k = c.index;
        out.push(Check::upper(format!("irf.spectrum[{k}].membership"), c.membership_residual, opts.tol));
        out.push(Check::upper(format!("irf.spectrum[{k}].quasi_periodicity"), c.quasi_residuals.0.max(c.quasi_residuals.1), opts.tol));
        out.push(Check::upper(format!("irf.spectrum[{k}].quadratic"), c.quadratic_residuals.iter().cloned().fold(0.0, f64::max), opts.tol));
        out.push(Check::upper(format!("irf.spectrum[{k}].second_line"), c.second_line_residuals.iter().cloned().fold(0.0, f64::max), opts.tol));
        out.push(Check::lower(format!("irf.spectrum[{k}].impostor_rejected"), c.impostor_residual, 1e-4));
        if c.degenerate {
            warnings.push(format!("eigenvalue {k} lies in a cluster (gap {:e}); subspace angle {:e}", c.gap, c.reconstruction_angle));
        } else {
            out.push(Check::upper(format!("irf.spectrum[{k}].reconstruction_angle"), c.reconstruction_angle, opts.angle_tol));
        }
    }
    out.push(Check::lower("irf.spectrum.span_smin", r.span_smin, 1e-6));
    out.put("warnings", &warnings);
    let points = cfg.irf.curve_points;
    if points > 0 {
        let tau = params.tau();
        let line: Vec<C64> = (0..points).map(|j| C64::new(j as f64 / (points - 1).max(1) as f64, 0.0) + tau * 0.37 + 0.013).collect();
        let mut rows = Vec::new();
        for c in &r.certificates {
            for (z, e) in line.iter().zip(irf::spectrum::eigenvalue_curve(&params, &c.eigenvector, &line)?) {
                rows.push(vec![c.index as f64, z.re, z.im, e.re, e.im]);
            }
        }
        out.table("eigenvalue_curves", vec!["index", "re_z", "im_z", "re_eps", "im_eps"], rows);
    }
    out.put("spectrum", &r);
    Ok(out)
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut all = Vec::new();
    for p in permutations(m - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, m - 1);
            all.push(q);
        }
    }
    all
}

/// `irf partition`: `tr T(w₁)⋯T(w_m)` and its symmetry in the rows.
pub fn irf_partition(cfg: &ModelConfig, s: &mut Sampler) -> Result<Outcome> {
    let params = cfg.params()?;
    params.check_irf_generic()?;
    let rows: Vec<C64> = if cfg.irf.rows.is_empty() { (0..cfg.irf.m).map(|_| irf::generic_spectral(&params, s)).collect() } else { cfg.irf.rows.clone() };
    let z = irf::partition_function(&params, &rows)?;
    let mut out = Outcome::default();
    out.put("rows", rows.iter().map(|w| pair(*w)).collect::<Vec<_>>());
    out.put("partition_function", pair(z));
    if rows.len() % 2 == 1 {
        // antiperiodicity forces zero for an odd number of rows
        out.push(Check::upper("irf.partition.odd_rows_vanish", z.norm(), 0.0));
        return Ok(out);
    }
    let perms: Vec<Vec<usize>> = if rows.len() <= 5 {
        permutations(rows.len())
    } else {
        (0..24)
            .map(|_| {
                let mut p: Vec<usize> = (0..rows.len()).collect();
                for i in (1..p.len()).rev() {
                    p.swap(i, s.index(i + 1));
                }
                p
            })
            .collect()
    };
    let r = irf::permutation_residual(&params, &rows, &perms)?;
    out.push(Check::upper("irf.partition.permutation_invariance", r, cfg.tol(1e-9)));
    out.put("permutations", perms.len());
    Ok(out)
}

/// `irf bethe`: the Bethe ansatz for `T(z)` on continuous `x`.
pub fn irf_bethe(cfg: &ModelConfig, s: &mut Sampler) -> Result<Outcome> {
    let params = cfg.params()?;
    let mut out = Outcome::default();
    let r = match irf::continuous_bethe(&params, s, cfg.irf.bethe_samples) {
        Ok(r) => r,
        Err(e) if e.is_config() => return Err(e),
        Err(e) => {
            out.push(Check::failed("irf.bethe.solve"));
            out.put("error", e.to_string());
            return Ok(out);
        }
    };
    out.push(Check::upper("irf.bethe.equations", r.bethe_residual, cfg.tol(1e-10)));
    out.push(Check::upper("irf.bethe.eigen_residual", r.eigen_residual, cfg.tol(1e-8)));
    out.push(Check::upper("irf.bethe.character", r.character_residual, cfg.tol(1e-9)));
    out.put("bethe", &r);
    Ok(out)
}

//! Acceptance criteria, one line of output each.

use std::f64::consts::{PI, SQRT_2};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use flatdrop::capacity::{build_meshes, riesz_energy, riesz_energy_on_meshes, CapacityOptions, Mesh, Resolutions};
use flatdrop::energy::{
    ball_energy_q, ball_energy_u, charged_infimum, critical_thresholds, ellipse_bound_relative_error,
    energy_report, eu_divergence_closed_form, eu_divergence_sequence, mist_configuration, multiball_energy_upper,
    nonexistence_witness, optimal_ball_radius, split_crossover, two_ball_split_energy, voltage_ball_infimum,
    VoltageBallInfimum,
};
use flatdrop::geometry::random::{perturbed_disk, random_convex_polygon, random_disjoint_pair};
use flatdrop::geometry::{
    hadwiger_round, make_disk, make_ellipse, make_rectangle, ConvexPolygon, EllipseSpec, Point, RotationRule,
};
use flatdrop::specfun::{derive_certificate, dudko_f, dudko_g, elliptic_e, elliptic_k, sturm_constant_sign};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;

const SEED: u64 = 20_240_601;

fn ensure(ok: bool, detail: String) -> Verdict {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn disk_capacity() -> Verdict {
    let disk = make_disk(1.0, Point::ORIGIN, 256).map_err(|e| e.to_string())?;
    let t = Instant::now();
    let r = riesz_energy(&disk, &CapacityOptions::standard()).map_err(|e| e.to_string())?;
    let secs = t.elapsed().as_secs_f64();
    let cells = r.samples.iter().map(|s| s.cells).max().unwrap_or(0);
    let rel = r.extrapolated / (PI / 2.0) - 1.0;
    ensure(rel.abs() < 0.01 && secs < 60.0 && cells <= 10_000, format!("rel {rel:+.2e}, {cells} cells, {secs:.1} s"))
}

fn ellipse_capacity() -> Verdict {
    let spec = EllipseSpec::new(1.0, 0.7).map_err(|e| e.to_string())?;
    let s = make_ellipse(spec, Point::ORIGIN, 256).map_err(|e| e.to_string())?;
    let t = Instant::now();
    let r = riesz_energy(&s, &CapacityOptions::standard()).map_err(|e| e.to_string())?;
    let secs = t.elapsed().as_secs_f64();
    let cells = r.samples.iter().map(|s| s.cells).max().unwrap_or(0);
    let rel = r.extrapolated / elliptic_k(0.49).map_err(|e| e.to_string())? - 1.0;
    ensure(rel.abs() < 0.01 && secs < 60.0 && cells <= 10_000, format!("rel {rel:+.2e}, {cells} cells, {secs:.1} s"))
}

fn ellipse_perimeter() -> Verdict {
    let spec = EllipseSpec::new(1.0, 0.7).map_err(|e| e.to_string())?;
    let s = make_ellipse(spec, Point::ORIGIN, 4096).map_err(|e| e.to_string())?;
    let err = (s.perimeter() - 4.0 * elliptic_e(0.49).map_err(|e| e.to_string())?).abs();
    ensure(err < 1e-4, format!("error {err:.2e}"))
}

fn dudko_accuracy() -> Verdict {
    let a = ellipse_bound_relative_error(0.7).map_err(|e| e.to_string())?;
    let b = ellipse_bound_relative_error(0.9999).map_err(|e| e.to_string())?;
    ensure((4e-5..=6e-5).contains(&a) && (0.15..=0.35).contains(&b), format!("{a:.3e} at 0.7, {b:.3} at 0.9999"))
}

fn f_bound_g_sign() -> Verdict {
    let mut f_max = f64::NEG_INFINITY;
    let mut g_max = f64::NEG_INFINITY;
    for i in 1..10_000 {
        let x = i as f64 / 10_000.0;
        f_max = f_max.max(dudko_f(x).map_err(|e| e.to_string())?);
        g_max = g_max.max(dudko_g(x).map_err(|e| e.to_string())?);
    }
    let limit = dudko_f(1e-12).map_err(|e| e.to_string())?;
    ensure(
        f_max <= 1.0 + 1e-12 && g_max < 0.0 && (limit - 1.0).abs() <= 1e-9,
        format!("max f {f_max:.15}, max g {g_max:.3e}, f(0+) {limit:.12}"),
    )
}

fn exact_certificate() -> Verdict {
    let c = derive_certificate().map_err(|e| e.to_string())?;
    let (zero, one) = (BigRational::zero(), BigRational::one());
    let degrees = (c.numerator.degree(), c.denominator.degree());
    let signs = c.numerator.eval(&zero) > zero && c.denominator.eval(&zero) < zero;
    let roots = sturm_constant_sign(&c.numerator, &zero, &one) && sturm_constant_sign(&c.denominator, &zero, &one);
    ensure(degrees == (Some(27), Some(15)) && signs && roots, format!("degrees {degrees:?}, signs {signs}, root-free {roots}"))
}

fn ball_optimum() -> Verdict {
    let mut worst: f64 = 0.0;
    for lambda in [1.0, 4.0, 10.0] {
        let r = optimal_ball_radius(lambda);
        let exact = 2.0 * PI * lambda.sqrt();
        worst = worst.max((ball_energy_q(r, lambda) - exact).abs()).max((r - 0.5 * lambda.sqrt()).abs());
        // the sampled minimum must not undercut the closed form
        for k in 1..2000 {
            let rr = r * (0.5 + k as f64 / 2000.0);
            if ball_energy_q(rr, lambda) < exact - 1e-12 {
                return Err(format!("undercut at lambda {lambda}, R {rr}"));
            }
        }
    }
    ensure(worst <= 1e-12, format!("max deviation {worst:.1e}"))
}

fn thresholds() -> Verdict {
    let t = critical_thresholds(PI).map_err(|e| e.to_string())?;
    let dev = [(t.lambda0_q, 4.0), (t.lambda_c1_q, 4.0 * SQRT_2), (t.lambda_c2_q, 12.0), (t.lambda0_u, PI * PI)]
        .iter()
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let c = split_crossover(PI).map_err(|e| e.to_string())?;
    let sides = two_ball_split_energy(PI, 0.99 * c) > ball_energy_q(1.0, 0.99 * c)
        && two_ball_split_energy(PI, 1.01 * c) < ball_energy_q(1.0, 1.01 * c);
    ensure(
        dev <= 1e-12 && (c - t.lambda_c1_q).abs() <= 1e-9 && sides,
        format!("threshold deviation {dev:.1e}, crossover error {:.1e}", (c - t.lambda_c1_q).abs()),
    )
}

fn scaling_law() -> Verdict {
    let w = nonexistence_witness(PI, 8.0, 100, 1e6).map_err(|e| e.to_string())?;
    let a = multiball_energy_upper(&w.configuration, 8.0) / charged_infimum(8.0) - 1.0;
    let m = mist_configuration(4.0, 100, 1e6).map_err(|e| e.to_string())?;
    let b = multiball_energy_upper(&m, 4.0) / (4.0 * PI) - 1.0;
    ensure(a.abs() < 0.01 && b.abs() < 0.01, format!("witness {a:.2e}, mist {b:.2e}"))
}

fn partition_bounds() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut upper = f64::NEG_INFINITY;
    let mut margin = f64::INFINITY;
    for _ in 0..10 {
        let (a, b) = random_disjoint_pair(&mut rng);
        let union = a.union(&b).map_err(|e| e.to_string())?;
        let small = a.diameter().min(b.diameter());
        let opts = CapacityOptions::coarse()
            .with_resolutions(Resolutions::Absolute(vec![small / 8.0, small / 12.0, small / 18.0]));
        let meshes = build_meshes(&union, &opts).map_err(|e| e.to_string())?;
        let mut parts = Vec::new();
        for c in 0..2 {
            let ms: Vec<Arc<Mesh>> =
                meshes.iter().map(|m| m.restrict(c).map(Arc::new)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
            parts.push(riesz_energy_on_meshes(ms, true).map_err(|e| e.to_string())?);
        }
        let whole = riesz_energy_on_meshes(meshes, true).map_err(|e| e.to_string())?;
        let d = a.set_distance(&b).map_err(|e| e.to_string())?;
        for k in 0..=4 {
            let t = k as f64 / 4.0;
            let bound = t * t * parts[0].extrapolated + (1.0 - t).powi(2) * parts[1].extrapolated + 2.0 * t * (1.0 - t) / d;
            upper = upper.max(whole.extrapolated / bound - 1.0);
        }
        let t = whole.measure.component_mass(0);
        let recombined = t * t * parts[0].energy + (1.0 - t).powi(2) * parts[1].energy;
        margin = margin.min((whole.energy - recombined) / whole.energy);
    }
    ensure(upper <= 0.02 && margin > 0.0, format!("worst upper excess {upper:+.3e}, smallest lower margin {margin:.3e}"))
}

fn brunn_minkowski() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let opts = CapacityOptions::coarse();
    let cap = |p: &ConvexPolygon| riesz_energy(&p.to_planar_set(), &opts).map(|r| 1.0 / r.extrapolated);
    let mut worst = f64::INFINITY;
    for _ in 0..20 {
        let np = rng.gen_range(5..14);
        let p = random_convex_polygon(&mut rng, np).scale(rng.gen_range(0.7..1.3)).map_err(|e| e.to_string())?;
        let nq = rng.gen_range(5..14);
        let q = random_convex_polygon(&mut rng, nq).scale(rng.gen_range(0.7..1.3)).map_err(|e| e.to_string())?;
        let mid = p.scale(0.5).map_err(|e| e.to_string())?.minkowski_sum(&q.scale(0.5).map_err(|e| e.to_string())?);
        let (cp, cq, cm) = (cap(&p).map_err(|e| e.to_string())?, cap(&q).map_err(|e| e.to_string())?, cap(&mid).map_err(|e| e.to_string())?);
        worst = worst.min((cm - 0.5 * cp - 0.5 * cq) / (0.5 * cp + 0.5 * cq));
    }
    ensure(worst >= -0.02, format!("smallest relative margin {worst:+.3e}"))
}

fn hadwiger_rounding() -> Verdict {
    let rect = make_rectangle(3.0, 1.0).map_err(|e| e.to_string())?;
    let rect = ConvexPolygon::new(rect.vertices().to_vec()).map_err(|e| e.to_string())?;
    let seq = hadwiger_round(&rect, 64, RotationRule::GoldenAngle).map_err(|e| e.to_string())?;
    let reached = seq.iter().position(|s| s.roundness() <= 1.05).map(|i| i + 1);
    let drift = seq.iter().map(|s| (s.perimeter() - rect.perimeter()).abs()).fold(0.0, f64::max);
    let opts = CapacityOptions::coarse();
    // the first mean is the rectangle itself
    let mut energies = Vec::new();
    for n in [1usize, 2, 8, 32, 64] {
        energies.push(riesz_energy(&seq[n - 1].to_planar_set(), &opts).map_err(|e| e.to_string())?.extrapolated);
    }
    let rise = energies.windows(2).map(|w| w[1] / w[0] - 1.0).fold(f64::NEG_INFINITY, f64::max);
    ensure(
        reached.is_some() && drift <= 1e-9 && rise <= 0.02,
        format!("roundness 1.05 at step {reached:?}, perimeter drift {drift:.1e}, largest I1 rise {rise:+.2e}"),
    )
}

fn equilibrium_density() -> Verdict {
    let disk = make_disk(1.0, Point::ORIGIN, 256).map_err(|e| e.to_string())?;
    let r = riesz_energy(&disk, &CapacityOptions::standard()).map_err(|e| e.to_string())?;
    let m = &r.measure;
    let mut worst: f64 = 0.0;
    let mut n = 0;
    for (c, rho) in m.mesh().cells().iter().zip(m.densities()) {
        if c.boundary_distance > 0.2 {
            let exact = 1.0 / (2.0 * PI * (1.0 - c.centroid.dot(c.centroid)).sqrt());
            worst = worst.max((rho / exact - 1.0).abs());
            n += 1;
        }
    }
    ensure(n > 0 && worst <= 0.05, format!("max deviation {worst:.3e} on {n} cells"))
}

fn voltage_program() -> Verdict {
    let (m, lambda) = (PI, 2.0 * PI * PI);
    let mut worst: f64 = 0.0;
    let mut last = 0.0;
    for n in [1u64, 10, 100, 10_000, 1_000_000, 100_000_000] {
        let v = eu_divergence_sequence(m, lambda, n).map_err(|e| e.to_string())?;
        let closed = 2.0 * (PI * m).sqrt() * (1.0 - lambda / (PI * PI)) * (n as f64).sqrt();
        worst = worst.max((v - closed).abs() / closed.abs()).max((v - eu_divergence_closed_form(m, lambda, n)).abs() / closed.abs());
        if v >= last {
            return Err(format!("sequence not decreasing at n = {n}"));
        }
        last = v;
    }
    let classes = voltage_ball_infimum(PI * PI / 2.0) == VoltageBallInfimum::ZeroNotAttained
        && voltage_ball_infimum(PI * PI) == VoltageBallInfimum::ZeroAttainedEverywhere
        && voltage_ball_infimum(2.0 * PI * PI) == VoltageBallInfimum::Unbounded;
    let closed_form = [1e-3, 1.0, 1e3].iter().all(|&r| {
        ball_energy_u(r, PI * PI / 2.0) > 0.0
            && ball_energy_u(r, PI * PI).abs() <= 1e-12 * 2.0 * PI * r
            && ball_energy_u(r, 2.0 * PI * PI) < 0.0
    });
    ensure(
        worst <= 1e-12 && last < -1e4 && classes && closed_form,
        format!("relative deviation {worst:.1e}, value at n = 1e8: {last:.3e}"),
    )
}

fn global_minimality() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let opts = CapacityOptions::standard();
    let lambda = critical_thresholds(PI).map_err(|e| e.to_string())?.lambda0_q;
    let disk = make_disk(1.0, Point::ORIGIN, 256).map_err(|e| e.to_string())?;
    let reference = energy_report(&disk, lambda, &opts).map_err(|e| e.to_string())?.energy_q;
    let mut margin = f64::INFINITY;
    for _ in 0..20 {
        let s = perturbed_disk(&mut rng, 256, 0.05, 8, PI).map_err(|e| e.to_string())?;
        let e = energy_report(&s, lambda, &opts).map_err(|e| e.to_string())?.energy_q;
        margin = margin.min((e - reference) / reference);
    }
    ensure(margin > 0.0, format!("smallest relative margin {margin:.3e} over the disk"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 15] = [
        ("disk capacity", disk_capacity),
        ("ellipse capacity", ellipse_capacity),
        ("ellipse perimeter", ellipse_perimeter),
        ("bound accuracy", dudko_accuracy),
        ("f bound and g sign", f_bound_g_sign),
        ("exact certificate", exact_certificate),
        ("ball optimum", ball_optimum),
        ("thresholds", thresholds),
        ("scaling law", scaling_law),
        ("partition bounds", partition_bounds),
        ("brunn-minkowski", brunn_minkowski),
        ("hadwiger rounding", hadwiger_rounding),
        ("equilibrium density", equilibrium_density),
        ("voltage program", voltage_program),
        ("global minimality", global_minimality),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let verdict = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".to_string()));
        let (status, detail) = match verdict {
            Ok(d) => ("pass", d),
            Err(d) => {
                failed += 1;
                ("fail", d)
            }
        };
        println!("criterion {:2} {name:<22} {status}  {detail}", i + 1);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

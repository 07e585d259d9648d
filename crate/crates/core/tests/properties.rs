//! Property tests for the geometric primitives and set oracles.

use circumfeas_core::diagnostics::{q_estimate, r_estimate};
use circumfeas_core::geometry::{circumcenter3, collinear, AffineManifold, Point};
use circumfeas_core::sets::{Ball, BoxSet, DiagonalSubspace, EpigraphRadial, EpigraphSmooth, Halfspace, RadialFunction, SetOracle};
use circumfeas_core::solvers::{map_step, sipm_step, Problem};
use circumfeas_core::product_lift;
use proptest::prelude::*;

fn coords(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-5.0f64..5.0, dim)
}

fn triple() -> impl Strategy<Value = (Vec<f64>, Vec<f64>, Vec<f64>)> {
    (2usize..=10).prop_flat_map(|d| (coords(d), coords(d), coords(d)))
}

fn hull_residual(c: &Point, x: &Point, y: &Point, z: &Point) -> f64 {
    let m = AffineManifold::new(x.clone(), vec![y.sub(x), z.sub(x)]).unwrap();
    c.dist(&m.project(c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn circumcenter_equidistant_and_in_hull((a, b, c) in triple()) {
        let (x, y, z) = (Point::new(a), Point::new(b), Point::new(c));
        // keep the triangle away from degeneracy so conditioning is sane
        prop_assume!(!collinear(&x, &y, &z, 1e-4).unwrap());
        let cc = circumcenter3(&x, &y, &z).unwrap();
        let dx = cc.dist(&x);
        prop_assert!((dx - cc.dist(&y)).abs() <= 1e-10 * (1.0 + dx));
        prop_assert!((dx - cc.dist(&z)).abs() <= 1e-10 * (1.0 + dx));
        prop_assert!(hull_residual(&cc, &x, &y, &z) <= 1e-10 * (1.0 + dx));
    }

    #[test]
    fn circumcenter_permutation_invariant((a, b, c) in triple()) {
        let (x, y, z) = (Point::new(a), Point::new(b), Point::new(c));
        prop_assume!(!collinear(&x, &y, &z, 1e-4).unwrap());
        let c1 = circumcenter3(&x, &y, &z).unwrap();
        let c2 = circumcenter3(&y, &z, &x).unwrap();
        let c3 = circumcenter3(&z, &x, &y).unwrap();
        prop_assert!(c1.dist(&c2) <= 1e-9 * (1.0 + c1.norm()));
        prop_assert!(c1.dist(&c3) <= 1e-9 * (1.0 + c1.norm()));
    }

    #[test]
    fn affine_projection_idempotent_nonexpansive(
        (anchor, dirs, p, q) in (2usize..=10).prop_flat_map(|d| (
            coords(d),
            prop::collection::vec(coords(d), 1..=3),
            coords(d),
            coords(d),
        ))
    ) {
        let m = AffineManifold::new(
            Point::new(anchor),
            dirs.into_iter().map(Point::new).collect(),
        ).unwrap();
        let (p, q) = (Point::new(p), Point::new(q));
        let pp = m.project(&p).unwrap();
        prop_assert!(pp.dist(&m.project(&pp).unwrap()) <= 1e-12 * (1.0 + pp.norm()));
        let pq = m.project(&q).unwrap();
        prop_assert!(pp.dist(&pq) <= p.dist(&q) + 1e-10);
    }

    #[test]
    fn closed_form_projections_idempotent_nonexpansive(
        (normal, offset, center, p, q) in (2usize..=8).prop_flat_map(|d| (
            coords(d), -3.0f64..3.0, coords(d), coords(d), coords(d),
        ))
    ) {
        prop_assume!(Point::new(normal.clone()).norm() > 1e-6);
        let sets = [
            SetOracle::Halfspace(Halfspace::new(Point::new(normal), offset).unwrap()),
            SetOracle::Ball(Ball::new(Point::new(center), 1.5).unwrap()),
            SetOracle::Box(BoxSet::new(vec![-1.0; p.len()], vec![2.0; p.len()]).unwrap()),
        ];
        let (p, q) = (Point::new(p), Point::new(q));
        for s in &sets {
            let pp = s.project(&p).unwrap();
            prop_assert!(pp.dist(&s.project(&pp).unwrap()) <= 1e-10);
            let pq = s.project(&q).unwrap();
            prop_assert!(pp.dist(&pq) <= p.dist(&q) + 1e-10);
            prop_assert!(s.contains(&pp, 1e-9).unwrap());
        }
    }

    #[test]
    fn radial_epigraph_projection_contract(
        (alpha, x, s) in (1.5f64..5.0, coords(3), -2.0f64..4.0)
    ) {
        let phi = RadialFunction::power(alpha).unwrap();
        let epi = SetOracle::EpigraphRadial(EpigraphRadial::new(phi, 3).unwrap());
        let mut c = x.clone();
        c.push(s);
        let p = Point::new(c);
        let pp = epi.project(&p).unwrap();
        // idempotent and a member
        prop_assert!(pp.dist(&epi.project(&pp).unwrap()) <= 1e-10 * (1.0 + pp.norm()));
        prop_assert!(epi.contains(&pp, 1e-9).unwrap());
        // stationarity residual at s = 0 (the supporting-hyperplane case)
        let mut c0 = x.clone();
        c0.push(0.0);
        let p0 = Point::new(c0);
        let q0 = epi.project(&p0).unwrap();
        let u = &q0.coords()[..3];
        let un: f64 = u.iter().map(|v| v * v).sum::<f64>().sqrt();
        if un > 1e-12 {
            let phi = RadialFunction::power(alpha).unwrap();
            let fu = phi.phi(un);
            let dfu = phi.dphi(un);
            let mut resid: f64 = 0.0;
            for i in 0..3 {
                let g = dfu * u[i] / un;
                let r = u[i] + fu * g - p0[i];
                resid += r * r;
            }
            prop_assert!(resid.sqrt() <= 1e-9 * (1.0 + p0.norm()));
        }
    }

    #[test]
    fn radial_and_smooth_projections_agree(
        (x, s) in (coords(2), -1.0f64..3.0)
    ) {
        let radial = SetOracle::EpigraphRadial(
            EpigraphRadial::new(RadialFunction::power(2.0).unwrap(), 2).unwrap(),
        );
        let smooth = SetOracle::EpigraphSmooth(
            EpigraphSmooth::new(
                2,
                Box::new(|v: &[f64]| v[0] * v[0] + v[1] * v[1]),
                Box::new(|v: &[f64]| vec![2.0 * v[0], 2.0 * v[1]]),
            )
            .unwrap(),
        );
        let mut c = x.clone();
        c.push(s);
        let p = Point::new(c);
        let a = radial.project(&p).unwrap();
        let b = smooth.project(&p).unwrap();
        prop_assert!(a.dist(&b) <= 1e-9 * (1.0 + p.norm()));
    }

    #[test]
    fn pierra_product_map_step_matches_sipm(
        (n, m, p, seeds) in (2usize..=5, 2usize..=5).prop_flat_map(|(n, m)| (
            Just(n),
            Just(m),
            coords(n),
            prop::collection::vec((coords(n), -2.0f64..2.0), m),
        ))
    ) {
        let build = |seeds: &[(Vec<f64>, f64)]| -> Vec<SetOracle> {
            seeds
                .iter()
                .enumerate()
                .map(|(i, (v, off))| {
                    let mut v = v.clone();
                    if Point::new(v.clone()).norm() <= 1e-6 {
                        v[0] += 1.0;
                    }
                    if i % 2 == 0 {
                        SetOracle::Halfspace(Halfspace::new(Point::new(v), *off).unwrap())
                    } else {
                        SetOracle::Ball(Ball::new(Point::new(v), 1.0 + off.abs()).unwrap())
                    }
                })
                .collect()
        };
        let p = Point::new(p);
        let sipm = sipm_step(&build(&seeds), &p).unwrap();

        let (k, u) = product_lift(build(&seeds)).unwrap();
        let diag = DiagonalSubspace::new(n, m).unwrap();
        let lifted = diag.embed(&p).unwrap();
        let problem = Problem::new(k, u, "lift").unwrap();
        let stepped = map_step(&problem, &lifted).unwrap();
        for i in 0..m {
            for j in 0..n {
                prop_assert!((stepped[i * n + j] - sipm[j]).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn fejer_plus_linear_set_distance_bounds_iterate_rate(c in 0.3f64..3.0) {
        // On a crossing-family instance the distance to the intersection and
        // the iterate error share the decay base: a Fejer monotone sequence
        // whose set distance decays R-linearly at rate c converges itself
        // R-linearly at a rate no worse than c (plus estimator slack).
        use circumfeas_core::diagnostics::{fejer_check, r_estimate};
        use circumfeas_core::experiments::{build_instance, Family, InstanceKind, InstanceSpec};
        use circumfeas_core::solvers::run_map;

        let mut spec = InstanceSpec::new(Family::Family2Radial);
        spec.phi = Some(circumfeas_core::experiments::PhiSpec::ShiftedPower { alpha: 2.0, c });
        let inst = build_instance(&spec).unwrap();
        let problem = match &inst.kind {
            InstanceKind::Pair(p) => p,
            _ => unreachable!(),
        };
        let trace = run_map(problem, &inst.x0, &inst.stop).unwrap();
        let ray = inst.meta.ray_solution.as_ref().unwrap();
        prop_assert!(fejer_check(&trace, std::slice::from_ref(ray), problem).unwrap() <= 1e-10);

        // dist to K cap U = max(0, |base(x)| - t*), closed form for this family
        let t_star = inst.meta.t_star.unwrap();
        let set_dist: Vec<f64> = trace
            .iterates
            .iter()
            .map(|x| (x[0].abs() - t_star).max(1e-300))
            .collect();
        let errors: Vec<f64> = trace.iterates.iter().map(|x| x.dist(ray)).collect();
        let cut = set_dist
            .iter()
            .position(|d| *d <= 1e-10 * set_dist[0])
            .unwrap_or(set_dist.len());
        prop_assume!(cut >= 8);
        let r_set = r_estimate(&set_dist[..cut]).unwrap();
        let r_err = r_estimate(&errors[..cut]).unwrap();
        prop_assert!(r_set < 1.0);
        prop_assert!(r_err <= r_set + 0.05, "r_err {r_err} vs r_set {r_set}");
    }

    #[test]
    fn geometric_sequences_estimate_their_base(base in 0.05f64..0.95, scale in 0.5f64..10.0) {
        let mut errors = Vec::with_capacity(40);
        let mut e = scale;
        for _ in 0..40 {
            errors.push(e);
            e *= base;
        }
        let q = q_estimate(&errors).unwrap();
        prop_assert!((q.q_hat - base).abs() <= 1e-9 * (1.0 + base));
        let r = r_estimate(&errors).unwrap();
        prop_assert!((r - base).abs() <= 1e-9);
    }
}

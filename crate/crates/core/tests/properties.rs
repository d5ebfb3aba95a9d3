use nnlsg::fracops::{t0_apply, ConvolutionState, GaugeState};
use nnlsg::graph::{
    check_integrability_sum_rule_with_tol, check_transparency_sum_rule_with_tol, gammas_from_betas, mirror_index,
};
use nnlsg::observables::{bond_norm, norm_error, record, reflection_coefficient};
use nnlsg::solver::{apply_vertex_bc, potential, vertex_residual};
use nnlsg::{BondId, BondMap, Field, ObservableRecord, StarGraph, C64};
use proptest::prelude::*;

fn beta() -> impl Strategy<Value = f64> {
    0.1f64..10.0
}

fn betas() -> impl Strategy<Value = BondMap<f64>> {
    (beta(), beta(), beta(), beta()).prop_map(|(a, b, c, d)| BondMap::new(a, b, c, d))
}

fn complex() -> impl Strategy<Value = C64> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(a, b)| C64::new(a, b))
}

fn field(points: usize) -> impl Strategy<Value = Field> {
    proptest::collection::vec(complex(), 4 * points).prop_map(move |v| {
        let mut f = Field::zeros(points);
        for (k, b) in BondId::ALL.into_iter().enumerate() {
            f.bond_mut(b).copy_from_slice(&v[k * points..(k + 1) * points]);
        }
        f
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn mirror_is_an_involution(m in 3usize..500, frac in 0.0f64..1.0, j in prop::sample::select(vec![-2i8, -1, 1, 2])) {
        let i = ((m - 1) as f64 * frac) as usize;
        let b = BondId::from_signed(j).unwrap();
        let once = (b.mirror(), mirror_index(i, m).unwrap());
        let twice = (once.0.mirror(), mirror_index(once.1, m).unwrap());
        prop_assert_eq!(twice, (b, i));
        prop_assert!(mirror_index(m, m).is_err());
    }

    #[test]
    fn gamma_ratios(beta in betas()) {
        let g = gammas_from_betas(&beta).unwrap();
        prop_assert_eq!(g[BondId::M1], 1.0);
        for b in BondId::ALL {
            let want = (beta[b] / beta[BondId::M1]).sqrt();
            prop_assert!((g[b] / g[BondId::M1] - want).abs() <= 4.0 * f64::EPSILON * want);
        }
    }

    #[test]
    fn sum_rules_scale(beta in betas(), c in 0.1f64..10.0) {
        let scaled = beta.map(|_, v| c * v);
        for check in [check_integrability_sum_rule_with_tol, check_transparency_sum_rule_with_tol] {
            let a = check(&beta, 1e-3).unwrap();
            let b = check(&scaled, 1e-3 / c).unwrap();
            prop_assert!((b.residual - a.residual / c).abs() <= 1e-12 * (1.0 + a.residual / c));
            if (a.residual - 1e-3).abs() > 1e-9 {
                prop_assert_eq!(a.holds, b.holds);
            }
        }
    }

    #[test]
    fn equal_betas_satisfy_both_rules(b in beta()) {
        let beta = BondMap::new(b, b, b, b);
        prop_assert!(check_integrability_sum_rule_with_tol(&beta, 0.0).unwrap().holds);
        prop_assert!(check_transparency_sum_rule_with_tol(&beta, 0.0).unwrap().holds);
    }

    #[test]
    fn pt_potential_identity(beta in betas(), f in field(9)) {
        let g = StarGraph::new(1.0, 9, beta).unwrap();
        for b in BondId::ALL {
            for i in 0..9 {
                let v = potential(&g, &f, b, i);
                let w = potential(&g, &f, b.mirror(), mirror_index(i, 9).unwrap());
                prop_assert_eq!(v, w.conj());
            }
        }
    }

    #[test]
    fn vertex_bc_is_a_projection(beta in betas(), f in field(7)) {
        let g = StarGraph::new(1.0, 7, beta).unwrap();
        let mut once = f.clone();
        apply_vertex_bc(&g, &mut once);
        let r = vertex_residual(&g, &once);
        let scale = f.max_abs() / g.spacing();
        prop_assert!(r.continuity <= 1e-14 * (1.0 + f.max_abs()) && r.flux <= 1e-12 * (1.0 + scale));
        let mut twice = once.clone();
        apply_vertex_bc(&g, &mut twice);
        prop_assert!(twice.max_abs_diff(&once) <= 1e-14 * (1.0 + f.max_abs()));
        for b in BondId::ALL {
            prop_assert_eq!(&once.bond(b)[1..], &f.bond(b)[1..]);
        }
    }

    #[test]
    fn total_norm_is_the_sum(beta in betas(), f in field(11)) {
        let g = StarGraph::new(2.0, 11, beta).unwrap();
        let r = record(&g, &f);
        let sum: C64 = BondId::ALL.iter().map(|&b| bond_norm(&g, &f, b)).sum();
        prop_assert_eq!(r.total_norm, sum);
        if let Some(refl) = r.reflection {
            prop_assert!((0.0..=1.0).contains(&refl));
        }
    }

    #[test]
    fn reflection_decreases_under_transfer(
        n in proptest::collection::vec(complex(), 4),
        s in 0.01f64..0.99,
    ) {
        let norms = BondMap::new(n[0], n[1], n[2], n[3]);
        prop_assume!(norms[BondId::M1].norm() > 1e-3 && norms[BondId::P1].norm() > 1e-3);
        let r0 = reflection_coefficient(&norms).unwrap();
        prop_assume!(r0 < 1.0);
        // move modulus weight s|N_{-1}| from b_{-1} onto b_{-2}, in the same phase as N_{-2}
        let mut moved = norms.clone();
        let dir = if norms[BondId::M2].norm() > 0.0 { norms[BondId::M2] / norms[BondId::M2].norm() } else { C64::new(1.0, 0.0) };
        moved[BondId::M2] = norms[BondId::M2] + dir * s * norms[BondId::M1].norm();
        moved[BondId::M1] = norms[BondId::M1] * (1.0 - s);
        let r1 = reflection_coefficient(&moved).unwrap();
        prop_assert!(r1 < r0, "{} !< {}", r1, r0);
    }

    #[test]
    fn norm_error_of_constant_records(n in complex(), dts in proptest::collection::vec(0.001f64..0.5, 1..40)) {
        let mut t = 0.0;
        let mut recs = vec![];
        for dt in std::iter::once(0.0).chain(dts) {
            t += dt;
            let z = C64::new(0.0, 0.0);
            recs.push(ObservableRecord { t, norms: BondMap::new(n, z, z, z), total_norm: n, energy: z, reflection: None });
        }
        prop_assert_eq!(norm_error(&recs).unwrap(), 0.0);
    }

    #[test]
    fn half_derivative_is_linear(
        f in proptest::collection::vec(complex(), 1..60),
        g in proptest::collection::vec(complex(), 60),
        a in complex(),
        b in complex(),
    ) {
        let dt = 0.01;
        let (mut sf, mut sg, mut sh) = (ConvolutionState::new(dt), ConvolutionState::new(dt), ConvolutionState::new(dt));
        for (x, y) in f.iter().zip(&g) {
            let df = sf.half_derivative(*x);
            let dg = sg.half_derivative(*y);
            let dh = sh.half_derivative(a * x + b * y);
            prop_assert!((dh - (a * df + b * dg)).norm() <= 1e-11 * (1.0 + dh.norm()));
        }
    }

    #[test]
    fn t0_without_potential_is_half_derivative(f in proptest::collection::vec(complex(), 1..60)) {
        let dt = 0.01;
        let gauge = GaugeState::new(C64::new(0.0, 0.0));
        let mut a = ConvolutionState::new(dt);
        let mut b = ConvolutionState::new(dt);
        let e = C64::from_polar(1.0, -std::f64::consts::FRAC_PI_4);
        for x in &f {
            let t0 = t0_apply(&mut a, &gauge, C64::new(0.0, 0.0), *x);
            let d = b.half_derivative(*x);
            prop_assert_eq!(t0, -e * d);
        }
    }
}

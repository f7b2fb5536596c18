use std::collections::BTreeMap;

use num_rational::BigRational;
use proptest::prelude::*;
use qdt::ffcount::FpMatrix;
use qdt::fixtures;
use qdt::mutation::*;
use qdt::qp::*;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn grading(pairs: &[(&str, i64)]) -> Grading {
    Grading::new(pairs.iter().map(|(a, d)| (a.to_string(), *d)).collect())
}

#[test]
fn premutate_a2() {
    let a2 = fixtures::a2();
    let g = GradedQp::from_cut(a2.qp.clone(), &Cut::empty()).unwrap();
    let pre = premutate(&g, 0).unwrap();
    let arrows = pre.qp.quiver.arrows();
    assert_eq!(arrows.len(), 1);
    assert_eq!(arrows[0].id, "b*");
    assert_eq!((arrows[0].tail, arrows[0].head), (1, 0));
    assert!(pre.qp.potential.is_zero());
}

#[test]
fn premutate_conifold() {
    let c = fixtures::conifold();
    let g = GradedQp::from_cut(c.qp.clone(), &Cut::new(["a1", "a2"])).unwrap();
    let pre = premutate(&g, 1).unwrap();
    assert_eq!(pre.qp.quiver.n_arrows(), 12);
    assert_eq!(pre.qp.potential.len(), 8);
    for (cyc, _) in pre.qp.potential.terms() {
        assert_eq!(cyc.len(), 3);
    }
    for i in ["1", "2"] {
        for j in ["1", "2"] {
            assert_eq!(pre.grading.degree(&format!("[b{j}.a{i}]")), Some(1));
        }
        assert_eq!(pre.grading.degree(&format!("a{i}*")), Some(0));
        assert_eq!(pre.grading.degree(&format!("b{i}*")), Some(0));
    }
    assert_eq!(pre.qp.potential.coefficient(&["[b1.a1]", "b1*", "a1*"]), rat(1));
    assert_eq!(pre.qp.potential.coefficient(&["[b2.a1]", "c1", "d2"]), rat(-1));
}

#[test]
fn premutate_synthetic() {
    let q = Quiver::from_strs(
        &["1", "2", "3"],
        &[("p", "1", "2"), ("z", "1", "2"), ("u", "2", "3"), ("w", "3", "1")],
    )
    .unwrap();
    let w = Potential::from_int_terms(&[(1, &["p", "u", "w"])]).unwrap();
    let g = GradedQp::new(
        Qp::new(q, w).unwrap(),
        grading(&[("p", 1), ("z", 1), ("u", 0), ("w", 0)]),
        1,
    )
    .unwrap();
    let pre = premutate(&g, 1).unwrap();
    let ids: Vec<&str> = pre.qp.quiver.arrows().iter().map(|a| a.id.as_str()).collect();
    assert_eq!(ids, vec!["p*", "z*", "u*", "w", "[u.p]", "[u.z]"]);
    let expected = Potential::from_int_terms(&[
        (1, &["[u.p]", "w"]),
        (1, &["[u.p]", "u*", "p*"]),
        (1, &["[u.z]", "u*", "z*"]),
    ])
    .unwrap();
    assert_eq!(pre.qp.potential, expected);
}

fn reduction_graded() -> GradedQp {
    let r = fixtures::reduction();
    GradedQp::new(
        r.qp,
        grading(&[("p", 1), ("r", 0), ("u", 0), ("w", 0), ("z", 1)]),
        1,
    )
    .unwrap()
}

#[test]
fn reduce_synthetic_example() {
    let red = reduce(&reduction_graded()).unwrap();
    let ids: Vec<&str> = red.qp.quiver.arrows().iter().map(|a| a.id.as_str()).collect();
    assert_eq!(ids, vec!["u", "w", "z"]);
    assert_eq!(
        red.qp.potential,
        Potential::from_int_terms(&[(-1, &["u", "w", "z"])]).unwrap()
    );
}

#[test]
fn reduce_identity_and_trivial_part() {
    let c = fixtures::conifold();
    let g = GradedQp::from_cut(c.qp.clone(), &Cut::new(["a1", "a2"])).unwrap();
    assert_eq!(reduce(&g).unwrap(), g);

    let q = Quiver::from_strs(&["1", "2", "3"], &[("p", "1", "2"), ("r", "2", "1"), ("u", "2", "3")]).unwrap();
    let w = Potential::from_int_terms(&[(2, &["p", "r"])]).unwrap();
    let g = GradedQp::new(Qp::new(q, w).unwrap(), grading(&[("p", 1), ("r", 0), ("u", 0)]), 1).unwrap();
    let red = reduce(&g).unwrap();
    assert!(red.qp.potential.is_zero());
    let ids: Vec<&str> = red.qp.quiver.arrows().iter().map(|a| a.id.as_str()).collect();
    assert_eq!(ids, vec!["u"]);
}

#[test]
fn reduce_rejects_non_isolated() {
    let r = fixtures::reduction();
    let w = Potential::from_int_terms(&[(1, &["p", "r"]), (1, &["p", "u", "w"]), (1, &["p", "r", "p", "u", "w"])]);
    let qp = Qp::new(r.qp.quiver.clone(), w.unwrap()).unwrap();
    let zero = grading(&[("p", 0), ("r", 0), ("u", 0), ("w", 0), ("z", 0)]);
    let g = GradedQp::new(qp, zero, 0).unwrap();
    assert!(matches!(reduce(&g), Err(MutationError::NonIsolatedTwoCycle(_))));
}

#[test]
fn mutate_a2_reverses_arrow() {
    let a2 = fixtures::a2();
    let mu = mutate_qp(&a2.qp, &Cut::empty(), 0).unwrap();
    assert_eq!(mu.qp.quiver.n_arrows(), 1);
    assert_eq!(mu.qp.quiver.arrows()[0].tail, 1);
    assert!(mu.qp.potential.is_zero());
    assert!(mu.cut.is_empty());
}

#[test]
fn mutate_conifold_matches_helix_quiver() {
    let c = fixtures::conifold();
    let mu = mutate_qp(&c.qp, &Cut::new(["a1", "a2"]), 1).unwrap();
    assert_eq!(mu.qp.quiver.n_arrows(), 12);
    assert_eq!(
        mu.cut,
        Cut::new(["[b1.a1]", "[b1.a2]", "[b2.a1]", "[b2.a2]"])
    );
    assert!(mu.qp.is_cut(&mu.cut));
    GradedQp::new(mu.qp.clone(), mu.grading.clone(), 1).unwrap();
    let helix = fixtures::p1xp1();
    let sigma = find_quiver_isomorphism(&mu.qp.quiver, &helix.qp.quiver).expect("same arrow counts");
    assert_eq!(sigma.len(), 4);
    assert!(find_qp_isomorphism(&mu.qp, &helix.qp).is_none());
    let iso = find_qp_isomorphism_up_to_signs(&mu.qp, &helix.qp);
    assert!(iso.is_some(), "potentials agree up to relabeling and arrow signs");
}

#[test]
fn mutate_conifold_at_non_source_fails() {
    let c = fixtures::conifold();
    assert!(matches!(
        mutate_qp(&c.qp, &Cut::new(["a1", "a2"]), 0),
        Err(MutationError::NotStrictSource(_))
    ));
}

#[test]
fn mutate_three_cycle_reduces_to_a3() {
    let t = fixtures::three_cycle();
    let mu = mutate_qp(&t.qp, &Cut::new(["a"]), 1).unwrap();
    let ids: Vec<&str> = mu.qp.quiver.arrows().iter().map(|a| a.id.as_str()).collect();
    assert_eq!(ids, vec!["a*", "b*"]);
    assert!(mu.qp.potential.is_zero());
    assert!(mu.cut.is_empty());
}

fn strict_source_cases() -> Vec<(&'static str, Qp, Cut, usize)> {
    vec![
        ("a2", fixtures::a2().qp, Cut::empty(), 0),
        ("three_cycle", fixtures::three_cycle().qp, Cut::new(["a"]), 1),
        ("conifold", fixtures::conifold().qp, Cut::new(["a1", "a2"]), 1),
        ("p1xp1", fixtures::p1xp1().qp, Cut::new(["U11", "U12", "U21", "U22"]), 0),
    ]
}

#[test]
fn fomin_zelevinsky_shape() {
    for (name, qp, cut, k) in strict_source_cases() {
        let mu = mutate_qp(&qp, &cut, k).unwrap();
        assert_eq!(
            exchange_matrix(&mu.qp.quiver),
            fz_mutation(&exchange_matrix(&qp.quiver), k),
            "{name}"
        );
    }
}

#[test]
fn phi_examples() {
    let a2 = fixtures::a2().qp.quiver;
    assert_eq!(phi(&a2, 0, &[1, 0]), vec![-1, 0]);
    assert_eq!(phi(&a2, 0, &[0, 1]), vec![1, 1]);
    assert_eq!(phi(&a2, 0, &[1, 1]), vec![0, 1]);
    assert!(in_n_qq(&a2, 0, &[1, 1]));
    assert!(!in_n_qq(&a2, 0, &[2, 1]));
    let c = fixtures::conifold().qp.quiver;
    assert_eq!(phi(&c, 1, &[1, 1, 1, 1]), vec![1, 1, 1, 1]);
    assert_eq!(phi(&c, 1, &[0, 0, 0, 1]), vec![0, 0, 0, 1]);
}

/// Bilinear forms read off a mutation, evaluated before and after `phi`.
struct Forms<'a> {
    q: &'a Quiver,
    q2: &'a Quiver,
    cut: &'a Cut,
    cut2: &'a Cut,
    k: usize,
}

impl Forms<'_> {
    fn pair(&self, v: &[i64], w: &[i64]) -> [(i64, i64); 5] {
        let (pv, pw) = (phi(self.q, self.k, v), phi(self.q, self.k, w));
        let sym = |q: &Quiver, c: &Cut, v: &[i64], w: &[i64]| {
            q.euler_form(v, w).unwrap() + q.cut_form(c, v, w).unwrap() + q.cut_form(c, w, v).unwrap()
        };
        [
            (self.q.euler_form(v, w).unwrap(), self.q2.euler_form(&pv, &pw).unwrap()),
            (self.q.cut_form(self.cut, v, w).unwrap(), self.q2.cut_form(self.cut2, &pv, &pw).unwrap()),
            (
                self.q.cut_complement_form(self.cut, v, w).unwrap(),
                self.q2.cut_complement_form(self.cut2, &pv, &pw).unwrap(),
            ),
            (self.q.skew_form(v, w).unwrap(), self.q2.skew_form(&pv, &pw).unwrap()),
            (sym(self.q, self.cut, v, w), sym(self.q2, self.cut2, &pv, &pw)),
        ]
    }
}

#[test]
fn a2_preserves_all_forms() {
    let a2 = fixtures::a2().qp;
    let mu = mutate_qp(&a2, &Cut::empty(), 0).unwrap();
    let f = Forms { q: &a2.quiver, q2: &mu.qp.quiver, cut: &Cut::empty(), cut2: &mu.cut, k: 0 };
    for v in [[1, 0], [0, 1], [2, -3]] {
        for w in [[1, 0], [0, 1], [5, 7]] {
            for (a, b) in f.pair(&v, &w) {
                assert_eq!(a, b);
            }
        }
    }
}

#[test]
fn conifold_cut_forms_are_not_individually_preserved() {
    // chi_C(e1, e2) = 2 while chi_C'(phi e1, phi e2) = 0: the cut arrows
    // 1 -> 2 become composites 1 -> 3.
    let c = fixtures::conifold();
    let cut = Cut::new(["a1", "a2"]);
    let mu = mutate_qp(&c.qp, &cut, 1).unwrap();
    let f = Forms { q: &c.qp.quiver, q2: &mu.qp.quiver, cut: &cut, cut2: &mu.cut, k: 1 };
    let r = f.pair(&[1, 0, 0, 0], &[0, 1, 0, 0]);
    assert_eq!(r[1], (2, 0));
    assert_ne!(r[0].0, r[0].1);
    // what survives: the skew form and chi_Q + chi_C + chi_C^T
    assert_eq!(r[3].0, r[3].1);
    assert_eq!(r[4].0, r[4].1);
}

proptest! {
    #[test]
    fn phi_is_an_involution(v in prop::collection::vec(-6i64..6, 4), k in 0usize..4) {
        let q = fixtures::conifold().qp.quiver;
        prop_assert_eq!(phi_inverse(&q, k, &phi(&q, k, &v)), v);
    }

    #[test]
    fn mutation_preserves_skew_and_symmetrized_forms(
        v in prop::collection::vec(-6i64..6, 4),
        w in prop::collection::vec(-6i64..6, 4),
    ) {
        for (_, qp, cut, k) in strict_source_cases() {
            let n = qp.quiver.n_vertices();
            let mu = mutate_qp(&qp, &cut, k).unwrap();
            let f = Forms { q: &qp.quiver, q2: &mu.qp.quiver, cut: &cut, cut2: &mu.cut, k };
            let r = f.pair(&v[..n], &w[..n]);
            prop_assert_eq!(r[3].0, r[3].1);
            prop_assert_eq!(r[4].0, r[4].1);
        }
    }
}

fn scalar(p: u32, x: u32) -> FpMatrix {
    FpMatrix::from_rows(p, &[vec![x]])
}

#[test]
fn module_mutation_a2() {
    let a2 = fixtures::a2();
    let maps = BTreeMap::from([("b".to_string(), scalar(2, 1))]);
    let m = ModulePoint::new(&a2.qp, &Cut::empty(), 2, vec![1, 1], maps).unwrap();
    let (_, out) = mutate_module(&a2.qp, &Cut::empty(), 0, &m).unwrap();
    assert_eq!(out.dims, vec![0, 1]);
    let bs = &out.maps["b*"];
    assert_eq!((bs.rows(), bs.cols()), (0, 1));

    let zero = BTreeMap::from([("b".to_string(), scalar(2, 0))]);
    let m = ModulePoint::new(&a2.qp, &Cut::empty(), 2, vec![1, 1], zero).unwrap();
    assert!(matches!(
        mutate_module(&a2.qp, &Cut::empty(), 0, &m),
        Err(MutationError::InjectivityFailed)
    ));
}

#[test]
fn module_mutation_with_zero_space_at_k() {
    let c = fixtures::conifold();
    let cut = Cut::new(["a1", "a2"]);
    let p = 3;
    let mut maps = BTreeMap::new();
    for (id, r, col) in [("b1", 1, 0), ("b2", 1, 0), ("c1", 2, 1), ("c2", 2, 1), ("d1", 1, 2), ("d2", 1, 2)] {
        maps.insert(id.to_string(), FpMatrix::zeros(p, r, col));
    }
    maps.insert("c1".into(), FpMatrix::from_rows(p, &[vec![1], vec![2]]));
    maps.insert("d1".into(), FpMatrix::from_rows(p, &[vec![1, 1]]));
    let m = ModulePoint::new(&c.qp, &cut, p, vec![1, 0, 1, 2], maps).unwrap();
    let (_, out) = mutate_module(&c.qp, &cut, 1, &m).unwrap();
    assert_eq!(out.dims, vec![1, 2, 1, 2]);
    assert_eq!(out.maps["c1"], m.maps["c1"]);
    assert_eq!(out.maps["d1"], m.maps["d1"]);
}

/// Every F_2 point of the conifold at (1,1,1,1) with Hom(s_2, V) = 0 lands
/// on a point of the mutated variety.
#[test]
fn module_mutation_conifold_all_points() {
    let c = fixtures::conifold();
    let cut = Cut::new(["a1", "a2"]);
    let arrows = ["b1", "b2", "c1", "c2", "d1", "d2"];
    let mut mutated = 0;
    for mask in 0u32..64 {
        let maps: BTreeMap<String, FpMatrix> = arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (a.to_string(), scalar(2, mask >> i & 1)))
            .collect();
        let Ok(m) = ModulePoint::new(&c.qp, &cut, 2, vec![1; 4], maps) else {
            continue;
        };
        if !m.no_simple_sub(&c.qp.quiver, &cut, 1) {
            continue;
        }
        let (mu, out) = mutate_module(&c.qp, &cut, 1, &m).unwrap();
        assert_eq!(out.dims, vec![1, 1, 1, 1]);
        out.check_relations(&mu.qp, &mu.cut).unwrap();
        mutated += 1;
    }
    assert!(mutated > 0);
}

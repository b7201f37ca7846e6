//! Worked examples over the public API. Expected values that are not
//! immediate are recomputed by the small oracles at the top of the file.

use num_bigint::BigInt;
use num_rational::BigRational;

use lorenzen::dedekind::{
    dedekind_forced, ideal_member, integral_closure, integral_dependence, Divisor, MonomialDomain, MonomialIdeal,
};
use lorenzen::entailment::{
    axiom_suite_sc, forced_entails, multi_forced_entails, order_reflection_check, BrokenIdentity, RelationHandle,
    Witness,
};
use lorenzen::group::lcd_condition_violation;
use lorenzen::lgroup::{
    groth_abs, groth_eq, groth_leq, groth_meet, regularity_inequality_check, term_eval, FormalDifference, LGroup,
    LatticeTerm,
};
use lorenzen::linfeas::{brute_force_feasible, feasible, riesz_refine, FeasibilityProblem};
use lorenzen::meet::{canonicalize, gamma_counterexample_search, gamma_violated, ideal_add, ideal_meet, preorder_leq, MeetTerm};
use lorenzen::regularise::{
    agreement_check, closedness_check, forced_regular_entails, free_entails, linearisation_check, prufer_entails,
    regular_axiom_suite, regular_entails, Sequent,
};
use lorenzen::{FiniteSubset, GroupElement, OrderedGroup};

fn e(c: &[i64]) -> GroupElement {
    GroupElement::from_i64s(c)
}

fn set(v: &[&[i64]]) -> FiniteSubset {
    FiniteSubset::from_i64s(v).unwrap()
}

fn ints(v: &[i64]) -> FiniteSubset {
    FiniteSubset::from_ints(v).unwrap()
}

fn z(rank: usize) -> OrderedGroup {
    OrderedGroup::product(rank).unwrap()
}

fn finest(rank: usize) -> RelationHandle {
    RelationHandle::finest(&z(rank))
}

fn s23() -> MonomialDomain {
    MonomialDomain::semigroup_ring(&[2, 3]).unwrap()
}

fn ded23() -> RelationHandle {
    RelationHandle::dedekind(&s23()).unwrap()
}

fn seq(a: &FiniteSubset, b: &FiniteSubset) -> Sequent {
    Sequent::new(a.clone(), b.clone()).unwrap()
}

/// Membership in the numerical semigroup by dynamic programming.
fn sg_member(gens: &[i64], n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let mut reach = vec![false; n as usize + 1];
    reach[0] = true;
    for k in 1..=n as usize {
        reach[k] = gens.iter().any(|&g| g as usize <= k && reach[k - g as usize]);
    }
    reach[n as usize]
}

/// Nonnegative, not-all-zero integer combination of `cols` with every
/// coordinate ≤ 0, entries at most `bound`.
fn combination_exists(cols: &[Vec<i64>], bound: i64) -> bool {
    let m = cols.len();
    let mut p = vec![0i64; m];
    loop {
        let mut k = 0;
        while k < m && p[k] == bound {
            p[k] = 0;
            k += 1;
        }
        if k == m {
            return false;
        }
        p[k] += 1;
        let d = cols[0].len();
        if (0..d).all(|i| cols.iter().zip(&p).map(|(c, pk)| c[i] * pk).sum::<i64>() <= 0) {
            return true;
        }
    }
}

fn columns(a: &[&[i64]], b: &[&[i64]]) -> Vec<Vec<i64>> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x.iter().zip(y.iter()).map(|(u, v)| u - v).collect()))
        .collect()
}

fn pmatrix(d: &lorenzen::entailment::Decision) -> Vec<Vec<BigInt>> {
    match &d.witness {
        Some(Witness::PMatrix { p }) => p.clone(),
        other => panic!("expected a p-matrix, got {other:?}"),
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

mod group_core {
    use super::*;

    #[test]
    fn orders() {
        assert!(z(2).leq(&e(&[0, 0]), &e(&[1, 2])).unwrap());
        let s = OrderedGroup::semigroup(&[2, 3]).unwrap();
        assert_eq!(s.leq(&e(&[0]), &e(&[1])).unwrap(), sg_member(&[2, 3], 1));
        for n in -3..12 {
            assert_eq!(s.leq(&e(&[0]), &e(&[n])).unwrap(), sg_member(&[2, 3], n), "{n}");
        }
        let m = OrderedGroup::matrix_preorder(vec![vec![1.into(), 1.into()]]).unwrap();
        assert!(m.leq(&e(&[0, 0]), &e(&[1, -1])).unwrap());
    }

    #[test]
    fn subset_arithmetic() {
        let a = set(&[&[1, 0], &[0, 1]]);
        assert_eq!(a.sumset(&a).unwrap(), set(&[&[2, 0], &[1, 1], &[0, 2]]));
        assert_eq!(ints(&[5]).nfold(3).unwrap(), ints(&[15]));
        assert_eq!(ints(&[3]).difference_set(&ints(&[1, 2])).unwrap(), ints(&[1, 2]));
    }

    #[test]
    fn lcd_condition() {
        assert_eq!(lcd_condition_violation(&z(2), 4, 6), None);
        assert_eq!(lcd_condition_violation(&OrderedGroup::trivial(1).unwrap(), 4, 6), None);
        let (a, n) = lcd_condition_violation(&OrderedGroup::semigroup(&[2, 3]).unwrap(), 4, 6).unwrap();
        let a_i = i64::try_from(&a.coords()[0]).unwrap();
        assert!(!sg_member(&[2, 3], a_i) && sg_member(&[2, 3], a_i * n as i64));
        assert_eq!((a, n), (e(&[1]), 2));
    }
}

mod entailment {
    use super::*;

    #[test]
    fn finest_examples() {
        let d = finest(1).sc_entails(&ints(&[5, 3]), &e(&[4])).unwrap();
        assert_eq!(d.witness, Some(Witness::Dominates { index: 0 }));
        assert!(finest(1).sc_entails(&ints(&[5]), &e(&[4])).unwrap().is_no());
        assert!(finest(2).sc_entails(&set(&[&[1, 0], &[0, 1]]), &e(&[0, 0])).unwrap().is_no());
    }

    #[test]
    fn forced_examples() {
        let f = finest(1);
        let d = forced_entails(&f, &e(&[-3]), &ints(&[5]), &e(&[0]), 6).unwrap();
        // Smallest j with 5 - 3j ≤ 0.
        let j = (0..).find(|j| 5 - 3 * j <= 0).unwrap();
        assert_eq!(d.witness, Some(Witness::Shifted { index: 0, multipliers: vec![BigInt::from(j)] }));
        assert!(forced_entails(&f, &e(&[3]), &ints(&[5]), &e(&[0]), 6).unwrap().is_no());
        for x in [-2, 0, 7] {
            assert!(forced_entails(&f, &e(&[x]), &ints(&[0]), &e(&[0]), 3).unwrap().is_yes());
        }
        assert!(multi_forced_entails(&f, &[e(&[-1])], &ints(&[2]), &e(&[0]), 4).unwrap().is_yes());
        assert!(multi_forced_entails(&f, &[e(&[1]), e(&[-1])], &ints(&[5]), &e(&[-5]), 12).unwrap().is_yes());
    }

    #[test]
    fn axiom_suites() {
        assert_eq!(axiom_suite_sc(&finest(2), 500, 3).unwrap().failures(), 0);
        assert_eq!(axiom_suite_sc(&ded23(), 500, 3).unwrap().failures(), 0);
        let broken = axiom_suite_sc(&BrokenIdentity::new(&z(1)), 100, 3).unwrap();
        assert!(broken.get("S1").unwrap().failures > 0);
    }

    #[test]
    fn order_reflection() {
        assert_eq!(order_reflection_check(&finest(2), 200, 1).unwrap().failures, 0);
        assert_eq!(order_reflection_check(&ded23(), 200, 1).unwrap().failures, 0);
        let reg = RelationHandle::regularisation(&ded23(), 4);
        assert!(reg.sc_entails(&ints(&[2]), &e(&[3])).unwrap().is_yes());
        assert!(!sg_member(&[2, 3], 3 - 2));
        assert!(order_reflection_check(&reg, 200, 1).unwrap().failures > 0);
    }
}

mod meet_monoid {
    use super::*;

    #[test]
    fn preorder_and_canonical_forms() {
        assert!(preorder_leq(&finest(1), &ints(&[3, 5]), &ints(&[4, 7])).unwrap().is_yes());
        assert!(preorder_leq(&finest(2), &set(&[&[1, 0]]), &set(&[&[0, 1]])).unwrap().is_no());
        let a = set(&[&[1, 0], &[3, -1]]);
        assert!(preorder_leq(&ded23(), &ints(&[2, 7]), &ints(&[2, 7])).unwrap().is_yes());
        assert!(preorder_leq(&finest(2), &a, &a).unwrap().is_yes());

        assert_eq!(canonicalize(&finest(1), &ints(&[5, 3, 4])).unwrap().support(), &ints(&[3]));
        let t = canonicalize(&finest(2), &set(&[&[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert_eq!(t.support(), &set(&[&[1, 0], &[0, 1]]));
        assert_eq!(canonicalize(&ded23(), &ints(&[4])).unwrap().support(), &ints(&[4]));
    }

    #[test]
    fn add_and_meet() {
        let r = finest(2);
        let s = canonicalize(&r, &set(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(ideal_add(&s, &s).unwrap().support(), &s.support().sumset(s.support()).unwrap());
        assert_eq!(ideal_meet(&s, &s).unwrap(), s);
        let r1 = finest(1);
        let three = MeetTerm::principal(&r1, e(&[3])).unwrap();
        let five = MeetTerm::principal(&r1, e(&[5])).unwrap();
        assert_eq!(ideal_meet(&three, &five).unwrap().support(), &ints(&[3]));
    }

    #[test]
    fn cancellativity() {
        assert_eq!(gamma_counterexample_search(&finest(1), 6, 3, 300, 2).unwrap(), None);
        assert!(gamma_violated(&ded23(), &ints(&[2]), &ints(&[2, 3]), &e(&[3])).unwrap());
        assert!(gamma_counterexample_search(&ded23(), 8, 3, 0, 2).unwrap().is_some());
        let reg = RelationHandle::regularisation(&ded23(), 4);
        assert_eq!(gamma_counterexample_search(&reg, 6, 3, 200, 2).unwrap(), None);
    }
}

mod lgroup {
    use super::*;

    fn fd(rel: &RelationHandle, pos: &FiniteSubset, neg: &FiniteSubset) -> FormalDifference {
        FormalDifference::new(canonicalize(rel, pos).unwrap(), canonicalize(rel, neg).unwrap()).unwrap()
    }

    #[test]
    fn equality_and_order() {
        let r = finest(1);
        assert!(groth_eq(&fd(&r, &ints(&[5]), &ints(&[3])), &fd(&r, &ints(&[4]), &ints(&[2]))).unwrap().is_yes());
        let s = fd(&r, &ints(&[2, 7]), &ints(&[2, 7]));
        assert!(groth_eq(&s, &FormalDifference::zero(&r)).unwrap().is_yes());
        let r2 = finest(2);
        let z2 = set(&[&[0, 0]]);
        let left = fd(&r2, &set(&[&[1, 0], &[0, 1]]), &z2);
        assert!(groth_eq(&left, &fd(&r2, &set(&[&[1, 0]]), &z2)).unwrap().is_no());

        assert!(groth_leq(&fd(&r, &ints(&[0]), &ints(&[1])), &FormalDifference::zero(&r)).unwrap().is_yes());
        assert!(groth_leq(&left, &left).unwrap().is_yes());
        let one_one = fd(&r2, &set(&[&[1, 1]]), &z2);
        assert!(groth_leq(&left, &one_one).unwrap().is_yes());
        let reg = RelationHandle::regularisation(&r2, 4);
        assert!(groth_leq(&fd(&reg, left.pos().support(), &z2), &fd(&reg, &set(&[&[1, 1]]), &z2)).unwrap().is_yes());
    }

    #[test]
    fn lattice_operations() {
        let r = finest(1);
        let zero = FormalDifference::zero(&r);
        let one = fd(&r, &ints(&[1]), &ints(&[0]));
        assert!(groth_eq(&groth_meet(&zero, &one).unwrap(), &zero).unwrap().is_yes());
        let r2 = finest(2);
        let z2 = set(&[&[0, 0]]);
        let m = groth_meet(&fd(&r2, &set(&[&[1, 0]]), &z2), &fd(&r2, &set(&[&[0, 1]]), &z2)).unwrap();
        assert!(groth_eq(&m, &fd(&r2, &set(&[&[1, 0], &[0, 1]]), &z2)).unwrap().is_yes());
        let abs = groth_abs(&fd(&r, &ints(&[2]), &ints(&[3]))).unwrap();
        assert!(groth_eq(&abs, &fd(&r, &ints(&[3]), &ints(&[2]))).unwrap().is_yes());
    }

    #[test]
    fn terms() {
        let lg = LGroup::new(&finest(1)).unwrap();
        let t: LatticeTerm = "(add (join 2 5) (meet 2 5))".parse().unwrap();
        assert!(groth_eq(&term_eval(&lg, &t).unwrap(), &lg.element(e(&[7])).unwrap()).unwrap().is_yes());
        let x = term_eval(&lg, &"(meet 4 4)".parse().unwrap()).unwrap();
        assert!(groth_eq(&x, &lg.element(e(&[4])).unwrap()).unwrap().is_yes());

        let reg = RelationHandle::regularisation(&finest(2), 4);
        let lg = LGroup::new(&reg).unwrap();
        let t: LatticeTerm = "(join (meet [1,0] [0,1]) (meet [0,1] [1,0]))".parse().unwrap();
        let want = FormalDifference::of_subset(&reg, &set(&[&[1, 0], &[0, 1]])).unwrap();
        assert!(groth_eq(&term_eval(&lg, &t).unwrap(), &want).unwrap().is_yes());
    }

    #[test]
    fn regularity_inequality() {
        assert_eq!(regularity_inequality_check(&LGroup::new(&finest(1)).unwrap(), 200, 4).unwrap().failures, 0);
        let reg = RelationHandle::regularisation(&finest(2), 4);
        assert_eq!(regularity_inequality_check(&LGroup::new(&reg).unwrap(), 200, 4).unwrap().failures, 0);
    }
}

mod linfeas {
    use super::*;

    #[test]
    fn rational_feasibility() {
        let p = feasible(&FeasibilityProblem::from_i64s(&[&[0, -1], &[-1, 0]], z(2)).unwrap()).unwrap();
        assert!(p.is_some());
        assert_eq!(feasible(&FeasibilityProblem::from_i64s(&[&[1, 0], &[0, 1]], z(2)).unwrap()).unwrap(), None);
        let prob = FeasibilityProblem::from_i64s(&[&[1, -2], &[-2, 1]], z(2)).unwrap();
        let p = feasible(&prob).unwrap().unwrap();
        let sum: BigRational = p.iter().sum();
        assert_eq!(sum, rat(1, 1));
        // p1 ≤ 2 p2 and p2 ≤ 2 p1.
        assert!(p[0] <= &p[1] * rat(2, 1) && p[1] <= &p[0] * rat(2, 1));
    }

    #[test]
    fn brute_force() {
        let p = brute_force_feasible(&FeasibilityProblem::from_i64s(&[&[0, -1], &[-1, 0]], z(2)).unwrap(), 1).unwrap();
        assert!(p.is_some_and(|p| p.iter().all(|x| *x <= BigInt::from(1))));
        assert_eq!(brute_force_feasible(&FeasibilityProblem::from_i64s(&[&[1, 0], &[0, 1]], z(2)).unwrap(), 5).unwrap(), None);
        let cols = [vec![2, -1], vec![-1, 2]];
        assert!(!combination_exists(&cols, 3));
        assert_eq!(brute_force_feasible(&FeasibilityProblem::from_i64s(&[&[2, -1], &[-1, 2]], z(2)).unwrap(), 3).unwrap(), None);
    }

    #[test]
    fn riesz() {
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let m = |rows: &[&[i64]]| rows.iter().map(|r| b(r)).collect::<Vec<_>>();
        assert_eq!(riesz_refine(&b(&[2, 1]), &b(&[1, 2])).unwrap(), m(&[&[1, 1], &[0, 1]]));
        assert_eq!(riesz_refine(&b(&[3]), &b(&[3])).unwrap(), m(&[&[3]]));
        assert_eq!(riesz_refine(&b(&[1, 1]), &b(&[2])).unwrap(), m(&[&[1], &[1]]));
    }
}

mod regularise {
    use super::*;

    #[test]
    fn free_examples() {
        let a: &[&[i64]] = &[&[1, 0], &[0, 1]];
        let d = free_entails(&z(2), &seq(&set(a), &set(&[&[1, 1]]))).unwrap();
        assert!(combination_exists(&columns(a, &[&[1, 1]]), 3));
        let p = pmatrix(&d);
        let (x, y) = (&p[0][0], &p[1][0]);
        // The p-matrix rows follow the sorted lhs: (0,1), (1,0).
        let sum = [-x, -y];
        assert!(sum.iter().all(|c| *c <= BigInt::from(0)) && (x + y) > BigInt::from(0));

        assert!(!combination_exists(&columns(a, &[&[0, 0]]), 6));
        assert!(free_entails(&z(2), &seq(&set(a), &set(&[&[0, 0]]))).unwrap().is_no());
        for g in [z(2), OrderedGroup::matrix_i64(&[&[1, 0], &[1, 1]]).unwrap()] {
            let d = free_entails(&g, &seq(&set(&[&[0, 0]]), &set(&[&[1, 1]]))).unwrap();
            assert_eq!(pmatrix(&d), vec![vec![BigInt::from(1)]]);
        }
    }

    #[test]
    fn regular_examples() {
        let a: &[&[i64]] = &[&[1, -1], &[-1, 1]];
        assert!(combination_exists(&columns(a, &[&[0, 0]]), 1));
        assert!(regular_entails(&finest(2), &seq(&set(a), &set(&[&[0, 0]])), 4).unwrap().is_yes());
        for x in [&[1, -1][..], &[0, 1]] {
            let s = seq(&set(&[x]), &set(&[x]));
            assert!(regular_entails(&finest(2), &s, 4).unwrap().is_yes());
        }
        assert!(regular_entails(&finest(2), &seq(&set(&[&[1, 0]]), &set(&[&[0, 1]])), 4).unwrap().is_no());
        // An instance of R5.
        let s = seq(&set(&[&[1, 0], &[0, 1]]), &set(&[&[1, 1], &[0, 0]]));
        assert!(regular_entails(&finest(2), &s, 4).unwrap().is_yes());
    }

    #[test]
    fn suites() {
        for rank in [1, 2] {
            assert_eq!(regular_axiom_suite(&finest(rank), 200, 8).unwrap().failures(), 0);
        }
        assert_eq!(linearisation_check(&finest(2), 200, 8).unwrap().failures, 0);
    }

    #[test]
    fn forcing_in_the_regularisation() {
        let f = finest(1);
        let d = forced_regular_entails(&f, &e(&[-1]), &seq(&ints(&[3]), &ints(&[0])), 4).unwrap();
        match d.witness {
            Some(Witness::Forced { steps, .. }) => assert_eq!(steps, vec![3]),
            other => panic!("{other:?}"),
        }
        let d = forced_regular_entails(&f, &e(&[1]), &seq(&ints(&[3]), &ints(&[0])), 4).unwrap();
        assert!(d.is_unknown());
        assert_eq!(d.bound_used, Some(4));

        // Forcing a truth agrees with the plain regularisation.
        let s = seq(&ints(&[2]), &ints(&[5]));
        let plain = regular_entails(&f, &s, 4).unwrap();
        assert!(plain.is_yes() && forced_regular_entails(&f, &e(&[3]), &s, 4).unwrap().is_yes());

        let a = set(&[&[1, -1], &[-1, 1]]);
        let s = seq(&a, &set(&[&[0, 0]]));
        for x in [e(&[1, -1]), e(&[-1, 1])] {
            assert!(forced_regular_entails(&finest(2), &x, &s, 4).unwrap().is_yes());
        }
    }

    #[test]
    fn prufer_examples() {
        let f = finest(2);
        let a = set(&[&[1, 0], &[0, 1]]);
        let b = e(&[1, 1]);
        let d = prufer_entails(&f, &a, &b, 4).unwrap();
        let Some(Witness::Prufer { x, .. }) = &d.witness else { panic!("{d:?}") };
        // The X named for this pair also works.
        let named = set(&[&[1, 0], &[0, 1]]);
        for chosen in [x, &named] {
            assert!(preorder_leq(&f, &a.sumset(chosen).unwrap(), &chosen.translate(&b).unwrap()).unwrap().is_yes());
        }
        let d = prufer_entails(&f, &set(&[&[2, 5]]), &e(&[2, 5]), 2).unwrap();
        assert!(matches!(d.witness, Some(Witness::Prufer { ref x, .. }) if x == &set(&[&[0, 0]])));
        let d = prufer_entails(&ded23(), &ints(&[2]), &e(&[3]), 4).unwrap();
        assert!(matches!(d.witness, Some(Witness::Prufer { ref x, .. }) if x == &ints(&[2, 3])));
        for bound in [1, 3, 6] {
            assert!(!prufer_entails(&f, &set(&[&[1, 0]]), &e(&[0, 1]), bound).unwrap().is_yes());
        }
    }

    #[test]
    fn agreement_and_closedness() {
        assert_eq!(agreement_check(&finest(2), 200, 6, 4, 4).unwrap().failures(), 0);
        let s = seq(&ints(&[2]), &ints(&[3]));
        assert!(regular_entails(&ded23(), &s, 4).unwrap().is_yes());
        assert!(prufer_entails(&ded23(), &ints(&[2]), &e(&[3]), 4).unwrap().is_yes());

        for rank in [1, 2, 3] {
            assert_eq!(closedness_check(&finest(rank), 40, 2, 4).unwrap().failures(), 0);
        }
        let sg = RelationHandle::finest(&OrderedGroup::semigroup(&[2, 3]).unwrap());
        let d = free_entails(sg.group(), &seq(&ints(&[0]), &ints(&[1]))).unwrap();
        assert_eq!(pmatrix(&d), vec![vec![BigInt::from(2)]]);
        assert!(closedness_check(&sg, 40, 2, 4).unwrap().failures() > 0);
        let r = closedness_check(&ded23(), 40, 2, 4).unwrap();
        assert!(r.get("order-reflection").unwrap().failures > 0);
        assert!(regular_entails(&ded23(), &seq(&ints(&[2]), &ints(&[3])), 4).unwrap().is_yes());
    }
}

mod dedekind {
    use super::*;

    fn poly2() -> MonomialDomain {
        MonomialDomain::poly_ring(2).unwrap()
    }

    /// `b` in the Newton polyhedron of `⟨(3,0),(0,3)⟩`: `b1 + b2 ≥ 3`, both
    /// coordinates nonnegative.
    fn in_newton_33(b: &[i64]) -> bool {
        b[0] >= 0 && b[1] >= 0 && b[0] + b[1] >= 3
    }

    #[test]
    fn membership() {
        let i = MonomialIdeal::from_i64s(&poly2(), &[&[3, 0], &[0, 3]]).unwrap();
        assert!(ideal_member(&i, &e(&[4, 1])).unwrap());
        let t3 = MonomialIdeal::from_ints(&s23(), &[3]).unwrap();
        for b in [4, 5] {
            assert_eq!(ideal_member(&t3, &e(&[b])).unwrap(), sg_member(&[2, 3], b - 3), "{b}");
        }
    }

    #[test]
    fn integral_dependence_examples() {
        let i = MonomialIdeal::from_i64s(&poly2(), &[&[3, 0], &[0, 3]]).unwrap();
        for b in [[2, 1], [1, 1], [1, 2], [0, 2], [4, 0]] {
            assert_eq!(integral_dependence(&i, &e(&b)).unwrap().is_yes(), in_newton_33(&b), "{b:?}");
        }
        let unit = MonomialIdeal::unit(&s23()).unwrap();
        assert!(integral_dependence(&unit, &e(&[1])).unwrap().is_yes());
        assert!(!ideal_member(&unit, &e(&[1])).unwrap());
    }

    #[test]
    fn closures() {
        let icl = |gens: &[i64]| integral_closure(&MonomialIdeal::from_ints(&s23(), gens).unwrap()).unwrap();
        assert_eq!(icl(&[3]).gens(), &ints(&[3, 4]));
        assert_eq!(icl(&[2]).gens(), &ints(&[2, 3]));
        let i = MonomialIdeal::from_i64s(&poly2(), &[&[3, 0], &[0, 3]]).unwrap();
        let want: Vec<Vec<i64>> = (0..=3).map(|k| vec![k, 3 - k]).filter(|b| in_newton_33(b)).collect();
        let want: Vec<&[i64]> = want.iter().map(Vec::as_slice).collect();
        assert_eq!(integral_closure(&i).unwrap().gens(), &set(&want));
    }

    #[test]
    fn divisors() {
        let d = Divisor::basic(&s23(), &ints(&[3])).unwrap().sub(&Divisor::basic(&s23(), &ints(&[2])).unwrap()).unwrap();
        assert!(Divisor::zero(&s23()).unwrap().leq(&d).unwrap());
        let m = Divisor::basic(&poly2(), &set(&[&[3, 0]])).unwrap().meet(&Divisor::basic(&poly2(), &set(&[&[0, 3]])).unwrap()).unwrap();
        assert!(m.eq(&Divisor::basic(&poly2(), &set(&[&[3, 0], &[0, 3]])).unwrap()).unwrap());
        assert_eq!(m.pos().gens(), &set(&[&[3, 0], &[2, 1], &[1, 2], &[0, 3]]));
        for dom in [s23(), poly2()] {
            let a = if dom.rank() == 1 { ints(&[5, 7]) } else { set(&[&[1, 2], &[3, 0]]) };
            let zero = if dom.rank() == 1 { ints(&[0]) } else { set(&[&[0, 0]]) };
            let sum = Divisor::basic(&dom, &a).unwrap().add(&Divisor::basic(&dom, &zero).unwrap()).unwrap();
            assert!(sum.eq(&Divisor::basic(&dom, &a).unwrap()).unwrap());
        }
    }

    #[test]
    fn macaulay() {
        let t = lorenzen::dedekind::macaulay_check(&poly2(), 300, 6, 5).unwrap();
        assert_eq!(t.failures, 0, "{t:?}");
    }

    #[test]
    fn forcing_domains() {
        assert_eq!(dedekind_forced(&s23(), &e(&[-1])).unwrap(), MonomialDomain::LaurentRing { step: 1 });
        let d = dedekind_forced(&s23(), &e(&[1])).unwrap();
        for n in -2..8 {
            assert_eq!(d.monoid_contains(&e(&[n])).unwrap(), n >= 0);
        }
        assert_eq!(dedekind_forced(&s23(), &e(&[5])).unwrap(), s23());
    }
}

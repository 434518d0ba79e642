use proptest::prelude::*;
use proptest::sample::select;

use hecke_core::affhecke::{induced_standard_module, nf_mul, AlgebraModule, NormalFormElement};
use hecke_core::combin::enumerate_partitions;
use hecke_core::finhecke::{hecke_mul, multiplicity, specht_module, HeckeElement, HeckeParams};
use hecke_core::linalg::{Matrix, Subspace};
use hecke_core::modlab::{cosocle, envelope, hom_space, module_radical, nilpotency_index, radical_elements};
use hecke_core::scalar::{int, LaurentPoly, Rational};
use hecke_core::segments::{
    enumerate_by_starts, is_generic, is_langlands_ordered, langlands_sort, linked, precedes, Multisegment, Segment,
};
use hecke_core::symgroup::all_permutations;

fn params(n: usize) -> HeckeParams {
    HeckeParams::new(n, int(3)).unwrap()
}

fn segment() -> impl Strategy<Value = Segment> {
    (0u32..2, -2i64..4, 1u32..4).prop_map(|(line, start, len)| Segment::new(line, start, len).unwrap())
}

fn multisegment() -> impl Strategy<Value = Vec<Segment>> {
    proptest::collection::vec(segment(), 1..5)
}

fn hecke_element(n: usize) -> impl Strategy<Value = HeckeElement> {
    let perms = all_permutations(n);
    proptest::collection::vec((select(perms), -3i64..=3), 0..4).prop_map(move |terms| {
        let p = params(n);
        terms
            .into_iter()
            .fold(HeckeElement::zero(&p), |acc, (w, c)| acc.add(&HeckeElement::basis(&p, w).scale(&int(c))).unwrap())
    })
}

fn nf_element(n: usize) -> impl Strategy<Value = NormalFormElement> {
    let poly = proptest::collection::vec((proptest::collection::vec(-1i32..=1, n), -2i64..=2), 0..3)
        .prop_map(move |t| LaurentPoly::from_terms(n, t.into_iter().map(|(e, c)| (e, int(c)))));
    proptest::collection::vec((select(all_permutations(n)), poly), 1..3).prop_map(move |terms| {
        let p = params(n);
        terms
            .into_iter()
            .fold(NormalFormElement::zero(&p), |acc, (w, f)| acc.add(&NormalFormElement::term(&p, w, f)).unwrap())
    })
}

fn standard_module() -> impl Strategy<Value = AlgebraModule> {
    let pool: Vec<Multisegment> = (1..=3).flat_map(|n| enumerate_by_starts(n, 0..=n as i64)).collect();
    select(pool).prop_map(|m| induced_standard_module(&params(m.n()), &m).unwrap())
}

fn invariant(sub: &Subspace, gens: &[Matrix]) -> bool {
    sub.basis_vectors().iter().all(|v| gens.iter().all(|g| sub.contains(&g.mul_vec(v))))
}

fn flat_span(ms: &[Matrix], d: usize) -> Subspace {
    Subspace::from_vectors(d * d, ms.iter().map(|m| m.as_slice().to_vec()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn langlands_sort_orders_and_is_canonical(mut segs in multisegment()) {
        let sorted = langlands_sort(&Multisegment::new(segs.clone()));
        prop_assert!(is_langlands_ordered(&sorted));
        prop_assert_eq!(langlands_sort(&sorted), sorted.clone());
        segs.reverse();
        prop_assert_eq!(langlands_sort(&Multisegment::new(segs)), sorted);
    }

    #[test]
    fn linking_is_symmetric_and_precedence_is_oriented(a in segment(), b in segment()) {
        prop_assert_eq!(linked(&a, &b), linked(&b, &a));
        prop_assert!(!(precedes(&a, &b) && precedes(&b, &a)));
        prop_assert_eq!(linked(&a, &b), precedes(&a, &b) || precedes(&b, &a));
        if linked(&a, &b) {
            let (lo, hi) = (a.start.min(b.start), a.end().max(b.end()));
            let covered = (lo..=hi).all(|x| (a.start..=a.end()).contains(&x) || (b.start..=b.end()).contains(&x));
            prop_assert!(covered);
        }
    }

    #[test]
    fn genericity_ignores_order(mut segs in multisegment()) {
        let generic = is_generic(&Multisegment::new(segs.clone()));
        segs.rotate_left(1);
        prop_assert_eq!(is_generic(&Multisegment::new(segs)), generic);
    }

    #[test]
    fn hecke_product_is_associative(a in hecke_element(4), b in hecke_element(4), c in hecke_element(4)) {
        let left = hecke_mul(&hecke_mul(&a, &b).unwrap(), &c).unwrap();
        let right = hecke_mul(&a, &hecke_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn hecke_product_is_bilinear(a in hecke_element(3), b in hecke_element(3), c in hecke_element(3)) {
        let lhs = hecke_mul(&a, &b.add(&c).unwrap()).unwrap();
        let rhs = hecke_mul(&a, &b).unwrap().add(&hecke_mul(&a, &c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_form_product_is_associative(a in nf_element(3), b in nf_element(3), c in nf_element(3)) {
        let left = nf_mul(&nf_mul(&a, &b).unwrap(), &c).unwrap();
        let right = nf_mul(&a, &nf_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn normal_form_restricts_to_finite_product(a in hecke_element(3), b in hecke_element(3)) {
        let lifted = nf_mul(&NormalFormElement::from_hecke(&a), &NormalFormElement::from_hecke(&b)).unwrap();
        prop_assert_eq!(lifted.to_hecke(), Some(hecke_mul(&a, &b).unwrap()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn multiplicity_is_additive(n in 2usize..=4, i in 0usize..5, j in 0usize..5) {
        let p = params(n);
        let labels = enumerate_partitions(n as u32);
        let (a, b) = (&labels[i % labels.len()], &labels[j % labels.len()]);
        let (sa, sb) = (specht_module(&p, a).unwrap(), specht_module(&p, b).unwrap());
        let sum = sa.module().direct_sum(sb.module()).unwrap();
        for l in &labels {
            let s = specht_module(&p, l).unwrap();
            let expected = usize::from(l == a) + usize::from(l == b);
            prop_assert_eq!(multiplicity(&s, &sum).unwrap(), expected);
        }
    }

    #[test]
    fn envelope_radical_is_a_nilpotent_ideal(m in standard_module()) {
        let a = envelope(&m).unwrap();
        let d = m.dim();
        let rad = radical_elements(&a);
        let span = flat_span(&rad, d);
        for r in &rad {
            for g in m.generators() {
                prop_assert!(span.contains((&g * r).as_slice()));
                prop_assert!(span.contains((r * &g).as_slice()));
            }
        }
        prop_assert!(nilpotency_index(&rad, d).is_some());
    }

    #[test]
    fn radical_is_a_submodule_with_simple_head(m in standard_module()) {
        let rad = module_radical(&m).unwrap();
        prop_assert!(invariant(&rad, &m.generators()));
        let head = cosocle(&m).unwrap();
        prop_assert_eq!(head.dim() + rad.dim(), m.dim());
        prop_assert!(module_radical(head.module()).unwrap().is_zero());
    }

    #[test]
    fn hom_is_additive(a in standard_module(), b in standard_module()) {
        prop_assume!(a.params() == b.params());
        let sum = a.direct_sum(&b).unwrap();
        let into_a = hom_space(&sum, &a).unwrap().dim();
        let expected = hom_space(&a, &a).unwrap().dim() + hom_space(&b, &a).unwrap().dim();
        prop_assert_eq!(into_a, expected);
    }
}

#[test]
fn radical_of_scalars_is_zero() {
    let m = Matrix::scalar(2, &Rational::one());
    assert!(radical_elements(&hecke_core::modlab::envelope_of(&[m], 2).unwrap()).is_empty());
}

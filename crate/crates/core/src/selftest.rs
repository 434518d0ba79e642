//! Quick relation and property checks, run by `hecke selftest`.

use crate::affhecke::{induced_standard_module, nf_mul, principal_series, CentralCharacterData, NormalFormElement};
use crate::combin::{count_syt, dominance_leq, enumerate_partitions, enumerate_syt, hook_length_count};
use crate::finhecke::{hecke_mul, multiplicity, regular_representation, specht_module, HeckeElement, HeckeParams};
use crate::scalar::{int, LaurentPoly, Rational};
use crate::segments::enumerate_by_starts;
use crate::symgroup::{all_permutations, Permutation};

#[derive(Clone, Debug)]
pub struct SelftestResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: Option<String>,
}

type Check = fn() -> Result<(), String>;

pub fn run_selftest() -> Vec<SelftestResult> {
    let checks: [(&'static str, Check); 8] = [
        ("Specht modules satisfy quadratic and braid relations, n <= 5", specht_relations),
        ("T-basis multiplication is associative on S_3", hecke_associative),
        ("reversed dominance is a partial order, n <= 6", dominance_axioms),
        ("hook-length formula matches tableau enumeration, n <= 6", syt_counts),
        ("regular representation decomposes by tableau counts, n <= 3", regular_decomposition),
        ("principal series satisfy all relations, n <= 3", principal_series_relations),
        ("standard modules satisfy all relations, n <= 3", standard_relations),
        ("normal-form product is associative in rank 2", normal_form_associative),
    ];
    checks
        .into_iter()
        .map(|(name, f)| {
            let outcome = f();
            SelftestResult { name, passed: outcome.is_ok(), detail: outcome.err() }
        })
        .collect()
}

fn params(n: usize) -> Result<HeckeParams, String> {
    HeckeParams::new(n, int(3)).map_err(|e| e.to_string())
}

fn specht_relations() -> Result<(), String> {
    for n in 1..=5 {
        let p = params(n)?;
        for l in enumerate_partitions(n as u32) {
            specht_module(&p, &l).map_err(|e| e.to_string())?;
        }
    }
    Ok(())
}

fn hecke_associative() -> Result<(), String> {
    let p = params(3)?;
    let basis: Vec<HeckeElement> = all_permutations(3).into_iter().map(|w| HeckeElement::basis(&p, w)).collect();
    let mul = |a: &HeckeElement, b: &HeckeElement| hecke_mul(a, b).map_err(|e| e.to_string());
    for a in &basis {
        for b in &basis {
            let ab = mul(a, b)?;
            for c in &basis {
                if mul(&ab, c)? != mul(a, &mul(b, c)?)? {
                    return Err(format!("({a:?})({b:?})({c:?}) is not associative"));
                }
            }
        }
    }
    Ok(())
}

fn dominance_axioms() -> Result<(), String> {
    for n in 1..=6 {
        let parts = enumerate_partitions(n);
        let leq = |a, b| dominance_leq(a, b).map_err(|e| e.to_string());
        for a in &parts {
            if !leq(a, a)? {
                return Err(format!("{a} is not below itself"));
            }
            for b in &parts {
                if leq(a, b)? && leq(b, a)? && a != b {
                    return Err(format!("antisymmetry fails for {a}, {b}"));
                }
                for c in &parts {
                    if leq(a, b)? && leq(b, c)? && !leq(a, c)? {
                        return Err(format!("transitivity fails for {a}, {b}, {c}"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn syt_counts() -> Result<(), String> {
    for n in 1..=6u32 {
        let mut total = 0u64;
        for l in enumerate_partitions(n) {
            let enumerated = enumerate_syt(&l).len() as u128;
            if hook_length_count(&l) != enumerated {
                return Err(format!("tableau counts disagree for {l}"));
            }
            total += count_syt(&l).pow(2);
        }
        if total != (1..=n as u64).product::<u64>() {
            return Err(format!("squares of tableau counts do not sum to {n}!"));
        }
    }
    Ok(())
}

fn regular_decomposition() -> Result<(), String> {
    for n in 1..=3 {
        let p = params(n)?;
        let reg = regular_representation(&p);
        for l in enumerate_partitions(n as u32) {
            let s = specht_module(&p, &l).map_err(|e| e.to_string())?;
            let m = multiplicity(&s, &reg).map_err(|e| e.to_string())?;
            if m as u64 != count_syt(&l) {
                return Err(format!("{l} occurs {m} times in the regular representation"));
            }
        }
    }
    Ok(())
}

fn principal_series_relations() -> Result<(), String> {
    let chars: [&[i64]; 4] = [&[2], &[1, 5], &[1, 3, 9], &[2, 2, 7]];
    for z in chars {
        let p = params(z.len())?;
        let chi = CentralCharacterData::new(z.iter().map(|&x| int(x)).collect()).map_err(|e| e.to_string())?;
        let m = principal_series(&p, &chi).map_err(|e| e.to_string())?;
        m.verify_relations().map_err(|e| format!("{z:?}: {e}"))?;
    }
    Ok(())
}

fn standard_relations() -> Result<(), String> {
    for n in 1..=3 {
        let p = params(n)?;
        for m in enumerate_by_starts(n, 0..=n as i64) {
            let st = induced_standard_module(&p, &m).map_err(|e| format!("{m}: {e}"))?;
            st.verify_relations().map_err(|e| format!("{m}: {e}"))?;
        }
    }
    Ok(())
}

fn normal_form_associative() -> Result<(), String> {
    let p = params(2)?;
    let s = Permutation::simple(2, 0);
    let id = Permutation::identity(2);
    let th = |a: i32, b: i32, c: i64| LaurentPoly::monomial(vec![a, b], Rational::from_integer(c));
    let elems = [
        NormalFormElement::term(&p, s.clone(), th(1, 0, 1)),
        NormalFormElement::term(&p, id.clone(), th(-1, 2, 3)),
        NormalFormElement::term(&p, s.clone(), th(0, -1, -2))
            .add(&NormalFormElement::term(&p, id, th(2, 1, 1)))
            .map_err(|e| e.to_string())?,
    ];
    let mul = |a: &NormalFormElement, b: &NormalFormElement| nf_mul(a, b).map_err(|e| e.to_string());
    for a in &elems {
        for b in &elems {
            for c in &elems {
                if mul(&mul(a, b)?, c)? != mul(a, &mul(b, c)?)? {
                    return Err(format!("normal-form product not associative on {a:?}, {b:?}, {c:?}"));
                }
            }
        }
    }
    Ok(())
}

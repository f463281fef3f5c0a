//! Code constructions from designs, and the reverse extraction of a BIBD
//! from an extremal code. Every constructor verifies its output before
//! returning it.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::codes::{
    check_w_minus_2_structure, hamming_distance, verify_code, Codeset, LpeccCode, LpeccParams,
    Mode, QaryCodeword,
};
use crate::comb::{binomial, k_subsets};
use crate::designs::{verify_frame, verify_packing, ConstantWeightCode, Frame, Packing};
use crate::error::{Error, Result};

/// Where a constructed code came from: the source design and one tag per
/// codeset naming the block/group/class/codeword that produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstructionRecord {
    pub source: String,
    pub params: LpeccParams,
    pub codeset_provenance: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub discarded: Vec<String>,
}

impl ConstructionRecord {
    fn new(source: String, params: LpeccParams, codeset_provenance: Vec<String>, discarded: Vec<String>) -> Result<Self> {
        let unique: BTreeSet<&String> = codeset_provenance.iter().collect();
        if unique.len() != codeset_provenance.len() {
            return Err(Error::Internal("duplicate codeset provenance tags".into()));
        }
        Ok(ConstructionRecord { source, params, codeset_provenance, discarded })
    }

    pub fn to_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("record serializes")
    }
}

#[derive(Debug, Clone)]
pub struct Constructed {
    pub code: LpeccCode,
    pub record: ConstructionRecord,
}

fn verified(params: LpeccParams, codesets: Vec<Codeset>, record: ConstructionRecord) -> Result<Constructed> {
    let code = LpeccCode::new(params, codesets)?;
    let report = verify_code(&code);
    if !report.passed {
        return Err(Error::Internal(format!(
            "constructed code fails verification ({}): {:?}",
            record.source,
            report.first_violation()
        )));
    }
    Ok(Constructed { code, record })
}

/// Binary code from a (n+1, w+t, 1) packing of strength w-e: each block
/// becomes one codeset of all its w-subsets; blocks through the designated
/// infinity point instead contribute all (w-1)-subsets of the rest.
pub fn lpecc_from_packing(p: &Packing, infinity: u32, t: usize, w: usize, e: usize) -> Result<Constructed> {
    if p.lambda != 1 {
        return Err(Error::Parameter(format!("packing must have lambda = 1 (got {})", p.lambda)));
    }
    if p.k != w + t {
        return Err(Error::Parameter(format!("block size {} != w + t = {}", p.k, w + t)));
    }
    if w < e + 1 {
        return Err(Error::Parameter(format!("need w >= e + 1 (got w={w}, e={e})")));
    }
    if p.r != w - e {
        return Err(Error::Parameter(format!("packing strength {} != w - e = {}", p.r, w - e)));
    }
    if t < 1 || t > w {
        return Err(Error::Parameter(format!("need 1 <= t <= w (got t={t}, w={w})")));
    }
    if infinity == 0 || infinity as usize > p.n {
        return Err(Error::Parameter(format!("infinity point {infinity} out of range 1..={}", p.n)));
    }
    let n = p.n - 1;
    let relabel = |pt: u32| if pt < infinity { pt } else { pt - 1 };

    let mut codesets = Vec::with_capacity(p.size());
    let mut tags = Vec::with_capacity(p.size());
    for block in p.blocks() {
        let through_infinity = block.contains(&infinity);
        let rest: Vec<u32> = block.iter().filter(|&&pt| pt != infinity).map(|&pt| relabel(pt)).collect();
        let subset_size = if through_infinity { w - 1 } else { w };
        let words = k_subsets(&rest, subset_size)
            .iter()
            .map(|s| QaryCodeword::from_support(n, s))
            .collect::<Result<Vec<_>>>()?;
        codesets.push(Codeset::new(words)?);
        tags.push(if through_infinity {
            format!("block {block:?} (through infinity)")
        } else {
            format!("block {block:?}")
        });
    }

    let params = LpeccParams::new(2, n, t, w, e, Mode::Lpecc)?;
    let record = ConstructionRecord::new(
        format!("packing n={} k={} r={} ({} blocks), infinity={infinity}", p.n, p.k, p.r, p.size()),
        params,
        tags,
        Vec::new(),
    )?;
    verified(params, codesets, record)
}

/// Shared assembly for the two frame constructions: chunk groups, then each
/// class's blocks, into collections of t+1 mutually disjoint sets; each full
/// collection is one codeset. Leftovers are dropped but recorded.
fn lpecc_from_frame(f: &Frame, t: usize, w: usize, e: usize, expected_b: i64) -> Result<Constructed> {
    let report = verify_frame(f);
    if !report.valid {
        return Err(Error::Parameter(format!("frame fails verification: {:?}", report.violation)));
    }
    if t < 1 {
        return Err(Error::Parameter(format!("need t >= 1 (got t={t})")));
    }
    let n = f.points();
    let chunk = t + 1;
    let mut codesets = Vec::new();
    let mut tags = Vec::new();
    let mut discarded = Vec::new();

    let push_chunk = |sets: &[Vec<u32>], tag: String, codesets: &mut Vec<Codeset>, tags: &mut Vec<String>| -> Result<()> {
        let words = sets.iter().map(|s| QaryCodeword::from_support(n, s)).collect::<Result<Vec<_>>>()?;
        codesets.push(Codeset::new(words)?);
        tags.push(tag);
        Ok(())
    };

    for (j, ch) in f.groups().chunks(chunk).enumerate() {
        if ch.len() == chunk {
            push_chunk(ch, format!("groups {}..{}", j * chunk + 1, (j + 1) * chunk), &mut codesets, &mut tags)?;
        } else {
            discarded.push(format!("groups {}..{} (short collection)", j * chunk + 1, j * chunk + ch.len()));
        }
    }
    for (ci, class) in f.classes().iter().enumerate() {
        for (j, ch) in class.blocks.chunks(chunk).enumerate() {
            if ch.len() == chunk {
                push_chunk(
                    ch,
                    format!("class {} blocks {}..{}", ci + 1, j * chunk + 1, (j + 1) * chunk),
                    &mut codesets,
                    &mut tags,
                )?;
            } else {
                discarded.push(format!(
                    "class {} blocks {}..{} (short collection)",
                    ci + 1,
                    j * chunk + 1,
                    j * chunk + ch.len()
                ));
            }
        }
    }

    if codesets.len() as i64 != expected_b {
        return Err(Error::Internal(format!(
            "assembled {} codesets, expected {expected_b} from the counting formula",
            codesets.len()
        )));
    }
    let params = LpeccParams::new(2, n, t, w, e, Mode::Lpecc)?;
    let record = ConstructionRecord::new(
        format!("{}-frame of type {}^{} ({} classes)", f.k, f.g, f.m, f.classes().len()),
        params,
        tags,
        discarded,
    )?;
    let constructed = verified(params, codesets, record)?;
    if constructed.code.b() >= 2 {
        let character = check_w_minus_2_structure(&constructed.code)?;
        if !character.passed {
            return Err(Error::Internal("frame code fails the e = w-2 structure conditions".into()));
        }
    }
    Ok(constructed)
}

/// Binary (n, t, 3, 1) code from a 3-frame of type 2^m: whole groups become
/// weight-2 codewords, class blocks weight-3 codewords.
pub fn lpecc_from_frame3(f: &Frame, t: usize) -> Result<Constructed> {
    if f.k != 3 || f.g != 2 {
        return Err(Error::Parameter(format!(
            "requires a 3-frame of type 2^m (got k={}, g={})",
            f.k, f.g
        )));
    }
    let n = f.points() as u64;
    let entry = crate::bounds::lb_frame3(n, t as u64);
    let expected = entry.floor.ok_or_else(|| {
        Error::Internal(format!("lb_frame3({n},{t}) inapplicable for a valid type-2^m frame"))
    })?;
    lpecc_from_frame(f, t, 3, 1, expected)
}

/// Binary (n, t, 4, 2) code from a 4-frame of type 3^m: whole groups become
/// weight-3 codewords, class blocks weight-4 codewords.
pub fn lpecc_from_frame4(f: &Frame, t: usize) -> Result<Constructed> {
    if f.k != 4 || f.g != 3 {
        return Err(Error::Parameter(format!(
            "requires a 4-frame of type 3^m (got k={}, g={})",
            f.k, f.g
        )));
    }
    let n = f.points() as u64;
    let entry = crate::bounds::lb_frame4(n, t as u64);
    let expected = entry.floor.ok_or_else(|| {
        Error::Internal(format!("lb_frame4({n},{t}) inapplicable for a valid type-3^m frame"))
    })?;
    lpecc_from_frame(f, t, 4, 2, expected)
}

/// q-ary (n, t, w, e) code from a constant-weight code of weight w+t and
/// minimum distance 2(e+t)+1: each word contributes the codeset of its
/// restrictions to all w-subsets of its support.
pub fn qary_from_cwc(c: &ConstantWeightCode, t: usize, w: usize, e: usize) -> Result<Constructed> {
    if t < 1 {
        return Err(Error::Parameter(format!("need t >= 1 (got t={t})")));
    }
    if c.w != w + t {
        return Err(Error::Parameter(format!("word weight {} != w + t = {}", c.w, w + t)));
    }
    if c.size() == 0 {
        return Err(Error::Parameter("constant-weight code has no words".into()));
    }
    let d_min = 2 * (e + t) + 1;
    let words = c.words();
    for (i, x) in words.iter().enumerate() {
        for y in &words[i + 1..] {
            let d = hamming_distance(x, y)?;
            if d < d_min {
                return Err(Error::Parameter(format!(
                    "words {:?} and {:?} are at distance {d} < 2(e+t)+1 = {d_min}",
                    x.support_pairs(),
                    y.support_pairs()
                )));
            }
        }
    }

    let mut codesets = Vec::with_capacity(words.len());
    let mut tags = Vec::with_capacity(words.len());
    for x in words {
        let support = x.support();
        let restrictions = k_subsets(&support, w).iter().map(|s| x.restrict(s)).collect();
        codesets.push(Codeset::new(restrictions)?);
        tags.push(format!("word {:?}", x.support_pairs()));
    }
    let params = LpeccParams::new(c.q, c.n, t, w, e, Mode::Lpecc)?;
    let record = ConstructionRecord::new(
        format!("constant-weight code q={} n={} w={} ({} words)", c.q, c.n, c.w, c.size()),
        params,
        tags,
        Vec::new(),
    )?;
    verified(params, codesets, record)
}

/// Recovers the (n+1, w+t, 1)-BIBD behind a maximum-size binary e = w-2
/// code. The four structure clauses are forced at this size; any failure is
/// reported as the violated clause.
pub fn extract_bibd(code: &LpeccCode) -> Result<Packing> {
    let p = *code.params();
    if p.q != 2 {
        return Err(Error::Parameter(format!("requires a binary code (got q={})", p.q)));
    }
    if p.w < 2 || p.e != p.w - 2 {
        return Err(Error::Parameter(format!("requires e = w - 2 (got w={}, e={})", p.w, p.e)));
    }
    if p.w <= p.t * p.t + 2 * p.t + 2 {
        return Err(Error::Parameter(format!(
            "requires w > t^2 + 2t + 2 = {} (got w={})",
            p.t * p.t + 2 * p.t + 2,
            p.w
        )));
    }
    let b = code.b();
    if b <= 1 {
        return Err(Error::Parameter(format!("requires size > 1 (got {b})")));
    }
    let pair_slots = binomial((p.w + p.t) as u64, 2);
    let total_pairs = binomial(p.n as u64 + 1, 2);
    if b as u128 * pair_slots != total_pairs {
        return Err(Error::Parameter(format!(
            "size {b} != C(n+1,2)/C(w+t,2) = {total_pairs}/{pair_slots}"
        )));
    }
    let report = verify_code(code);
    if !report.passed {
        return Err(Error::Parameter(format!(
            "code fails verification: {:?}",
            report.first_violation()
        )));
    }

    for (i, cs) in code.codesets().iter().enumerate() {
        if let Some(x) = cs.words().iter().find(|x| x.weight() + 1 < p.w) {
            return Err(Error::Structure(format!(
                "clause (i): codeset {} contains a codeword of weight {}, expected {} or {}",
                i + 1,
                x.weight(),
                p.w - 1,
                p.w
            )));
        }
    }
    if p.n % (p.w + p.t - 1) != 0 {
        return Err(Error::Structure(format!(
            "clause (ii): w + t - 1 = {} does not divide n = {}",
            p.w + p.t - 1,
            p.n
        )));
    }

    let infinity = p.n as u32 + 1;
    let mut blocks = Vec::with_capacity(b);
    for (i, cs) in code.codesets().iter().enumerate() {
        let union: BTreeSet<u32> = cs.supports().iter().flatten().copied().collect();
        let union: Vec<u32> = union.into_iter().collect();
        if union.len() == p.w + p.t - 1 {
            for sub in k_subsets(&union, p.w - 1) {
                let word = QaryCodeword::from_support(p.n, &sub)?;
                if !cs.contains(&word) {
                    return Err(Error::Structure(format!(
                        "clause (iii): codeset {} misses the (w-1)-subset {sub:?} of its support union",
                        i + 1
                    )));
                }
            }
            let mut block = union;
            block.push(infinity);
            blocks.push(block);
        } else if union.len() == p.w + p.t {
            let expected = k_subsets(&union, p.w);
            if cs.len() != expected.len() {
                return Err(Error::Structure(format!(
                    "clause (iii): codeset {} has {} codewords, expected exactly the {} w-subsets of its support union",
                    i + 1,
                    cs.len(),
                    expected.len()
                )));
            }
            for sub in expected {
                let word = QaryCodeword::from_support(p.n, &sub)?;
                if !cs.contains(&word) {
                    return Err(Error::Structure(format!(
                        "clause (iii): codeset {} misses the w-subset {sub:?} of its support union",
                        i + 1
                    )));
                }
            }
            blocks.push(union);
        } else {
            return Err(Error::Structure(format!(
                "clause (iii): codeset {} has support union of size {}, expected {} or {}",
                i + 1,
                union.len(),
                p.w + p.t - 1,
                p.w + p.t
            )));
        }
    }

    let packing = Packing::new(p.n + 1, p.w + p.t, 2, 1, blocks)?;
    let packing_report = verify_packing(&packing);
    if !(packing_report.valid && packing_report.steiner) {
        return Err(Error::Structure(format!(
            "clause (iv): recovered blocks do not form a ({}, {}, 1)-BIBD: {:?}",
            p.n + 1,
            p.w + p.t,
            packing_report.violation
        )));
    }
    Ok(packing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::ub_large_w;
    use crate::codes::tau;
    use crate::designs::{affine_plane, planar_difference_set, search_frame};

    fn fano() -> Packing {
        planar_difference_set(2).unwrap().1
    }

    #[test]
    fn fano_route_shapes() {
        let c = lpecc_from_packing(&fano(), 7, 1, 2, 0).unwrap();
        assert_eq!(c.code.b(), 7);
        assert_eq!(c.code.params().n, 6);
        let mut through = 0;
        for cs in c.code.codesets() {
            match cs.len() {
                2 => {
                    // infinity codeset: singleton supports
                    assert!(cs.words().iter().all(|x| x.weight() == 1));
                    through += 1;
                }
                3 => assert!(cs.words().iter().all(|x| x.weight() == 2)),
                other => panic!("unexpected codeset size {other}"),
            }
        }
        // Fano has 3 blocks through any point
        assert_eq!(through, 3);
    }

    #[test]
    fn order_5_plane_route_meets_the_upper_bound() {
        let (_, plane) = planar_difference_set(5).unwrap();
        let c = lpecc_from_packing(&plane, 31, 1, 5, 3).unwrap();
        assert_eq!(c.code.b(), 31);
        assert_eq!(ub_large_w(30, 1, 5).floor, Some(31));
    }

    #[test]
    fn packing_route_tau_values() {
        let (_, plane) = planar_difference_set(5).unwrap();
        let c = lpecc_from_packing(&plane, 31, 1, 5, 3).unwrap();
        for (cs, tag) in c.code.codesets().iter().zip(&c.record.codeset_provenance) {
            let expected = if tag.contains("infinity") { 10 } else { 15 };
            assert_eq!(tau(cs, 2), expected, "{tag}");
        }
    }

    #[test]
    fn packing_route_rejects_mismatched_parameters() {
        let p = fano();
        // k = 3 but w + t = 4
        assert!(matches!(lpecc_from_packing(&p, 7, 1, 3, 1), Err(Error::Parameter(_))));
        // infinity out of range
        assert!(matches!(lpecc_from_packing(&p, 8, 1, 2, 0), Err(Error::Parameter(_))));
        // t > w
        assert!(matches!(lpecc_from_packing(&p, 7, 2, 1, 0), Err(Error::Parameter(_))));
        // strength mismatch: r = 2 but w - e = 1
        assert!(matches!(lpecc_from_packing(&p, 7, 1, 2, 1), Err(Error::Parameter(_))));
    }

    #[test]
    fn frame3_type_2_4() {
        let f = search_frame(3, 2, 4).unwrap();
        let c = lpecc_from_frame3(&f, 1).unwrap();
        assert_eq!(c.code.b(), 6);
        assert_eq!(c.code.params().n, 8);
        // 2 group-codesets of weight-2 words, 4 class-codesets of weight-3 words
        let group_sets = c.record.codeset_provenance.iter().filter(|t| t.starts_with("groups")).count();
        assert_eq!(group_sets, 2);
        assert!(c.record.discarded.is_empty());
    }

    #[test]
    fn frame3_large_t_discards_leftovers() {
        let f = search_frame(3, 2, 4).unwrap();
        let c = lpecc_from_frame3(&f, 3).unwrap();
        // floor(4/4) = 1 group-codeset, floor(2/4) = 0 per class
        assert_eq!(c.code.b(), 1);
        assert!(!c.record.discarded.is_empty());
    }

    #[test]
    fn frame3_rejects_other_frames() {
        let f = search_frame(4, 3, 5).unwrap();
        assert!(matches!(lpecc_from_frame3(&f, 1), Err(Error::Parameter(_))));
    }

    #[test]
    fn frame4_type_3_5() {
        let f = search_frame(4, 3, 5).unwrap();
        let c = lpecc_from_frame4(&f, 1).unwrap();
        assert_eq!(c.code.b(), 7);
        assert_eq!(crate::bounds::lb_frame4(15, 1).floor, Some(7));

        let c = lpecc_from_frame4(&f, 4).unwrap();
        assert_eq!(c.code.b(), 1);

        let f3 = search_frame(3, 2, 4).unwrap();
        assert!(matches!(lpecc_from_frame4(&f3, 1), Err(Error::Parameter(_))));
    }

    fn ternary_pair() -> ConstantWeightCode {
        let x = QaryCodeword::new(3, vec![1, 1, 1, 0, 0]).unwrap();
        let y = QaryCodeword::new(3, vec![0, 0, 2, 2, 2]).unwrap();
        ConstantWeightCode::new(3, 5, 5, 3, vec![x, y]).unwrap()
    }

    #[test]
    fn cwc_route_ternary_example() {
        let c = qary_from_cwc(&ternary_pair(), 1, 2, 1).unwrap();
        assert_eq!(c.code.b(), 2);
        for cs in c.code.codesets() {
            assert_eq!(cs.len(), 3);
            assert!(cs.words().iter().all(|x| x.weight() == 2));
        }
        // every codeword has weight exactly w, so the same codesets form a
        // valid constant-power code
        let params = LpeccParams::new(3, 5, 1, 2, 1, Mode::Cpecc).unwrap();
        let cpecc = LpeccCode::new(params, c.code.codesets().to_vec()).unwrap();
        assert!(verify_code(&cpecc).passed);
    }

    #[test]
    fn cwc_route_single_word() {
        let x = QaryCodeword::new(3, vec![1, 2, 1, 0, 0]).unwrap();
        let c = ConstantWeightCode::new(3, 5, 1, 3, vec![x]).unwrap();
        let out = qary_from_cwc(&c, 1, 2, 1).unwrap();
        assert_eq!(out.code.b(), 1);
        assert_eq!(out.code.codesets()[0].len(), 3);
    }

    #[test]
    fn cwc_route_checks_distance_exhaustively() {
        let x = QaryCodeword::new(3, vec![1, 1, 1, 0, 0]).unwrap();
        let y = QaryCodeword::new(3, vec![1, 2, 2, 0, 0]).unwrap();
        // header claims d=5 but the actual distance is 2
        let c = ConstantWeightCode::new(3, 5, 5, 3, vec![x, y]).unwrap();
        let err = qary_from_cwc(&c, 1, 2, 1).unwrap_err();
        assert!(matches!(err, Error::Parameter(_)));
        assert!(err.to_string().contains("distance"));
    }

    #[test]
    fn cwc_route_weight_mismatch() {
        assert!(matches!(qary_from_cwc(&ternary_pair(), 1, 3, 1), Err(Error::Parameter(_))));
    }

    #[test]
    fn extract_round_trips_the_affine_plane() {
        let plane = affine_plane(7).unwrap();
        let c = lpecc_from_packing(&plane, 49, 1, 6, 4).unwrap();
        assert_eq!(c.code.b(), 56);
        let recovered = extract_bibd(&c.code).unwrap();
        assert_eq!(recovered, plane);
    }

    #[test]
    fn extract_round_trips_the_order_7_plane() {
        let (_, plane) = planar_difference_set(7).unwrap();
        let c = lpecc_from_packing(&plane, 57, 1, 7, 5).unwrap();
        assert_eq!(c.code.b(), 57);
        let recovered = extract_bibd(&c.code).unwrap();
        assert_eq!(recovered, plane);
    }

    #[test]
    fn extract_requires_large_w() {
        let (_, plane) = planar_difference_set(5).unwrap();
        let c = lpecc_from_packing(&plane, 31, 1, 5, 3).unwrap();
        // w = 5 is not strictly above t^2 + 2t + 2 = 5
        assert!(matches!(extract_bibd(&c.code), Err(Error::Parameter(_))));
    }

    #[test]
    fn extract_requires_more_than_one_codeset() {
        let x = QaryCodeword::from_support(20, &[1, 2, 3, 4, 5, 6, 7]).unwrap();
        let cs = Codeset::new(k_subsets(&x.support(), 6).iter().map(|s| QaryCodeword::from_support(20, s).unwrap()).collect()).unwrap();
        let params = LpeccParams::new(2, 20, 1, 6, 4, Mode::Lpecc).unwrap();
        let code = LpeccCode::new(params, vec![cs]).unwrap();
        assert!(matches!(extract_bibd(&code), Err(Error::Parameter(_))));
    }

    #[test]
    fn extract_rejects_codes_that_fail_verification() {
        // a tampered codeset breaks property C before any structure clause
        // is reached: the extraction theorem leaves no room for a verified
        // code of exact size with broken structure
        let plane = affine_plane(7).unwrap();
        let c = lpecc_from_packing(&plane, 49, 1, 6, 4).unwrap();
        let mut codesets = c.code.codesets().to_vec();
        let words = codesets[0].words().to_vec();
        let union: BTreeSet<u32> = codesets[0].supports().iter().flatten().copied().collect();
        let union: Vec<u32> = union.into_iter().collect();
        let replacement = QaryCodeword::from_support(48, &union[1..6]).unwrap();
        let mut new_words: Vec<QaryCodeword> =
            words.iter().filter(|x| x.support() != union[1..7]).cloned().collect();
        new_words.push(replacement);
        codesets[0] = Codeset::new(new_words).unwrap();
        let tampered = LpeccCode::new(*c.code.params(), codesets).unwrap();
        assert!(!verify_code(&tampered).passed);
        assert!(matches!(extract_bibd(&tampered), Err(Error::Parameter(_))));
    }
}

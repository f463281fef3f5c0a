//! Closed-form bounds, admissibility predicates, and helper lemma checks.
//!
//! Every value is computed over exact big integers/rationals; floors are
//! taken only at the reporting boundary. Bounds that carry a hypothesis
//! return a [`BoundEntry`] whose `applicable` flag and `clause` record
//! whether the hypothesis holds.

use num::bigint::BigInt;
use num::rational::Ratio;
use num::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::codes::Mode;
use crate::comb::binomial as binom_u;
use crate::error::{Error, Result};

pub type Rational = Ratio<BigInt>;

/// C(a, b) with the convention that a < b, a < 0 or b < 0 gives 0.
pub fn big_binomial(a: i64, b: i64) -> BigInt {
    if a < 0 || b < 0 || a < b {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * BigInt::from(a - i) / BigInt::from(i + 1);
    }
    acc
}

fn ratio(num: BigInt, den: BigInt) -> Rational {
    Ratio::new(num, den)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundEntry {
    pub name: String,
    pub value: Option<Rational>,
    pub floor: Option<i64>,
    pub applicable: bool,
    pub clause: String,
}

impl BoundEntry {
    fn applicable(name: &str, value: Rational, clause: impl Into<String>) -> Self {
        let floor = value
            .floor()
            .to_integer()
            .to_i64()
            .expect("bound floor exceeds i64");
        BoundEntry { name: name.into(), value: Some(value), floor: Some(floor), applicable: true, clause: clause.into() }
    }

    fn not_applicable(name: &str, clause: impl Into<String>) -> Self {
        BoundEntry { name: name.into(), value: None, floor: None, applicable: false, clause: clause.into() }
    }
}

impl Serialize for BoundEntry {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BoundEntry", 5)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("value", &self.value.as_ref().map(|v| v.to_string()))?;
        st.serialize_field("floor", &self.floor)?;
        st.serialize_field("applicable", &self.applicable)?;
        st.serialize_field("clause", &self.clause)?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub entries: Vec<BoundEntry>,
}

impl BoundReport {
    pub fn entry(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

/// Exact value floor((n+1)/(w+t)) for binary codes with e = w-1.
pub fn exact_e_eq_w_minus_1(n: u64, t: u64, w: u64) -> Result<u64> {
    if t < 1 || t > n {
        return Err(Error::Parameter(format!("t={t} must satisfy 1 <= t <= n={n}")));
    }
    if w < 1 || w > n {
        return Err(Error::Parameter(format!("w={w} must satisfy 1 <= w <= n={n}")));
    }
    Ok((n + 1) / (w + t))
}

/// Upper bound floor(C(n+1,2)/C(w+t,2)) for binary codes with e = w-2,
/// valid when w >= t^2+2t+2 and n >= w+t-1.
pub fn ub_large_w(n: u64, t: u64, w: u64) -> BoundEntry {
    let name = "ub_large_w";
    let threshold = t * t + 2 * t + 2;
    if w < threshold || n + 1 < w + t {
        return BoundEntry::not_applicable(
            name,
            format!(
                "requires w >= t^2+2t+2 = {threshold} and n >= w+t-1 = {} (got w={w}, n={n})",
                (w + t).saturating_sub(1)
            ),
        );
    }
    let value = ratio(big_binomial(n as i64 + 1, 2), big_binomial((w + t) as i64, 2));
    BoundEntry::applicable(name, value, "b <= floor(C(n+1,2) / C(w+t,2)) for e = w-2")
}

/// Upper bound floor(n(n+1)/(6(t+1))) for binary codes with w=3, e=1,
/// valid when n >= 3(t+1).
pub fn ub_w3_e1(n: u64, t: u64) -> BoundEntry {
    let name = "ub_w3_e1";
    if n < 3 * (t + 1) {
        return BoundEntry::not_applicable(name, format!("requires n >= 3(t+1) = {} (got n={n})", 3 * (t + 1)));
    }
    let value = ratio(BigInt::from(n) * BigInt::from(n + 1), BigInt::from(6 * (t + 1)));
    BoundEntry::applicable(name, value, "b <= floor(n(n+1) / (6(t+1))) for w=3, e=1")
}

/// 3-frame lower bound floor((n-2)/(3(t+1)))*(n/2) + floor(n/(2(t+1))) for
/// binary codes with w=3, e=1, stated for n == 2 (mod 6).
pub fn lb_frame3(n: u64, t: u64) -> BoundEntry {
    let name = "lb_frame3";
    if n % 6 != 2 {
        return BoundEntry::not_applicable(name, format!("requires n == 2 (mod 6) (got n={n})"));
    }
    let value = ((n - 2) / (3 * (t + 1))) * (n / 2) + n / (2 * (t + 1));
    BoundEntry::applicable(
        name,
        Rational::from_integer(BigInt::from(value)),
        "b >= floor((n-2)/(3(t+1))) * n/2 + floor(n/(2(t+1))) via 3-frames",
    )
}

/// 4-frame lower bound floor((n-3)/(4(t+1)))*(n/3) + floor(n/(3(t+1))) for
/// binary codes with w=4, e=2, stated for n == 3 (mod 12).
pub fn lb_frame4(n: u64, t: u64) -> BoundEntry {
    let name = "lb_frame4";
    if n % 12 != 3 {
        return BoundEntry::not_applicable(name, format!("requires n == 3 (mod 12) (got n={n})"));
    }
    let value = ((n - 3) / (4 * (t + 1))) * (n / 3) + n / (3 * (t + 1));
    BoundEntry::applicable(
        name,
        Rational::from_integer(BigInt::from(value)),
        "b >= floor((n-3)/(4(t+1))) * n/3 + floor(n/(3(t+1))) via 4-frames",
    )
}

/// Johnson-type bound on constant-weight codes:
/// A_q(n, 2e+1, w) <= (q-1)^(w-e) C(n,w-e) / C(w,w-e), returned exactly.
pub fn johnson_ub(q: u64, n: u64, e: u64, w: u64) -> Result<Rational> {
    if q < 2 {
        return Err(Error::Parameter(format!("q={q} must be >= 2")));
    }
    if e > w || w > n {
        return Err(Error::Parameter(format!("need e <= w <= n (got e={e}, w={w}, n={n})")));
    }
    let pow = BigInt::from(q - 1).pow((w - e) as u32);
    Ok(ratio(pow * big_binomial(n as i64, (w - e) as i64), big_binomial(w as i64, (w - e) as i64)))
}

/// The large-weight hypothesis 2 C(w,w-e) >= C(w-t-1,w-e) + C(w+t,w-e).
/// Out-of-range binomials evaluate to 0.
pub fn weight_condition(t: u64, w: u64, e: u64) -> bool {
    let we = (w - e.min(w)) as i64;
    let lhs = BigInt::from(2) * big_binomial(w as i64, we);
    let rhs = big_binomial(w as i64 - t as i64 - 1, we) + big_binomial((w + t) as i64, we);
    lhs >= rhs
}

fn qary_leading_term(q: u64, n: u64, t: u64, w: u64, e: u64) -> Rational {
    let pow = BigInt::from(q - 1).pow((w - e) as u32);
    ratio(pow * big_binomial(n as i64, (w - e) as i64), big_binomial((w + t) as i64, (w - e) as i64))
}

/// q-ary upper bound
/// b <= (q-1)^(w-e) C(n,w-e)/C(w+t,w-e) + sum_{k<w-e} (q-1)^k C(n,k)/C(k+e,k),
/// applicable when the weight condition holds.
pub fn qary_ub(q: u64, n: u64, t: u64, w: u64, e: u64) -> BoundEntry {
    let name = "qary_ub";
    if e + 1 > w {
        return BoundEntry::not_applicable(name, format!("requires e <= w-1 (got e={e}, w={w})"));
    }
    if !weight_condition(t, w, e) {
        return BoundEntry::not_applicable(
            name,
            "weight condition 2C(w,w-e) >= C(w-t-1,w-e) + C(w+t,w-e) fails".to_string(),
        );
    }
    let mut value = qary_leading_term(q, n, t, w, e);
    for k in 0..(w - e) {
        let pow = BigInt::from(q - 1).pow(k as u32);
        value += ratio(pow * big_binomial(n as i64, k as i64), big_binomial((k + e) as i64, k as i64));
    }
    BoundEntry::applicable(
        name,
        value,
        "b <= (q-1)^(w-e) C(n,w-e)/C(w+t,w-e) + sum_{k<w-e} (q-1)^k C(n,k)/C(k+e,k)",
    )
}

/// Constant-weight upper bound b <= (q-1)^(w-e) C(n,w-e) / C(w+t,w-e),
/// applicable when the weight condition holds.
pub fn cpecc_ub(q: u64, n: u64, t: u64, w: u64, e: u64) -> BoundEntry {
    let name = "cpecc_ub";
    if e + 1 > w {
        return BoundEntry::not_applicable(name, format!("requires e <= w-1 (got e={e}, w={w})"));
    }
    if !weight_condition(t, w, e) {
        return BoundEntry::not_applicable(
            name,
            "weight condition 2C(w,w-e) >= C(w-t-1,w-e) + C(w+t,w-e) fails".to_string(),
        );
    }
    BoundEntry::applicable(
        name,
        qary_leading_term(q, n, t, w, e),
        "b <= (q-1)^(w-e) C(n,w-e) / C(w+t,w-e) in constant-weight mode",
    )
}

/// Edge count of the balanced complete r-partite graph on v vertices
/// (the Turán graph T(v, r)).
pub fn turan_edges(v: u64, r: u64) -> u64 {
    assert!(r >= 1, "turan_edges needs r >= 1");
    let s = v / r; // small part size
    let lambda = v % r; // number of parts of size s+1
    let sum_sq = lambda * (s + 1) * (s + 1) + (r - lambda) * s * s;
    (v * v - sum_sq) / 2
}

/// The packing estimate xi(v, m) = v + lambda*C(ceil,2) + (v-m-lambda)*C(floor,2)
/// with lambda = v mod (v-m); always >= 3m.
pub fn estimate_xi(v: u64, m: u64) -> Result<u64> {
    if m < 1 || v <= m {
        return Err(Error::Parameter(format!("need v > m >= 1 (got v={v}, m={m})")));
    }
    let parts = v - m;
    let s = v / parts;
    let c = v.div_ceil(parts);
    let lambda = v % parts;
    Ok(v + lambda * binom_u(c, 2) as u64 + (parts - lambda) * binom_u(s, 2) as u64)
}

/// True iff deleting any t vertices leaves a triangle in the graph.
/// Exhaustive over all t-subsets; vertices are 0-based, v <= 128.
pub fn triangle_transversal_check(v: usize, edges: &[(u32, u32)], t: usize) -> bool {
    assert!(v <= 128, "triangle_transversal_check supports at most 128 vertices");
    let mut adj = vec![0u128; v];
    for &(a, b) in edges {
        let (a, b) = (a as usize, b as usize);
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    let has_triangle = |dead: u128| -> bool {
        edges.iter().any(|&(a, b)| {
            let (a, b) = (a as usize, b as usize);
            dead & (1 << a) == 0 && dead & (1 << b) == 0 && (adj[a] & adj[b] & !dead) != 0
        })
    };
    if t == 0 {
        return has_triangle(0);
    }
    if t >= v {
        return false;
    }
    // iterate t-subsets of 0..v as index vectors
    let vertices: Vec<u32> = (0..v as u32).collect();
    crate::comb::k_subsets(&vertices, t)
        .into_iter()
        .all(|del| has_triangle(del.iter().fold(0u128, |m, &x| m | (1 << x))))
}

/// Necessary divisibility conditions for a (v, k, 1)-BIBD:
/// (k-1) | (v-1) and k(k-1) | v(v-1).
pub fn admissible_bibd(v: u64, k: u64) -> bool {
    debug_assert!(k >= 2 && k <= v);
    (v - 1) % (k - 1) == 0 && (v * (v - 1)) % (k * (k - 1)) == 0
}

/// Existence conditions for a 3-frame of type g^m:
/// m >= 4, g even, 3 | g(m-1). Complete (no exceptions).
pub fn admissible_frame3(g: u64, m: u64) -> bool {
    m >= 4 && g % 2 == 0 && (g * (m - 1)) % 3 == 0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AdmissibilityStatus {
    Exists,
    PossibleException,
    NotAdmissible,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Admissibility {
    pub status: AdmissibilityStatus,
    pub reason: String,
}

/// 4-frame exception list: these (g, m) satisfy the divisibility conditions
/// but existence is not settled.
fn frame4_exception(g: u64, m: u64) -> bool {
    if g == 36 && m == 12 {
        return true;
    }
    if g % 12 != 6 {
        return false;
    }
    (g == 6 && [7, 23, 27, 35, 39, 47].contains(&m))
        || ((g == 30 || (66..=2190).contains(&g)) && [7, 23, 27, 39, 47].contains(&m))
        || ((g == 42 || g == 54 || (2202..=11238).contains(&g)) && [23, 27].contains(&m))
        || (g == 18 && [15, 23, 27].contains(&m))
}

/// Existence conditions for a 4-frame of type g^m:
/// m >= 5, 3 | g, 4 | g(m-1), minus a finite list of unresolved pairs.
pub fn admissible_frame4(g: u64, m: u64) -> Admissibility {
    if m < 5 {
        return Admissibility {
            status: AdmissibilityStatus::NotAdmissible,
            reason: format!("requires m >= 5 (got m={m})"),
        };
    }
    if g % 3 != 0 {
        return Admissibility {
            status: AdmissibilityStatus::NotAdmissible,
            reason: format!("requires 3 | g (got g={g})"),
        };
    }
    if (g * (m - 1)) % 4 != 0 {
        return Admissibility {
            status: AdmissibilityStatus::NotAdmissible,
            reason: format!("requires 4 | g(m-1) (got g(m-1)={})", g * (m - 1)),
        };
    }
    if frame4_exception(g, m) {
        return Admissibility {
            status: AdmissibilityStatus::PossibleException,
            reason: format!("(g={g}, m={m}) is in the unresolved exception list"),
        };
    }
    Admissibility { status: AdmissibilityStatus::Exists, reason: "divisibility conditions hold".into() }
}

fn known_exact(q: u64, n: u64, t: u64, w: u64, e: u64, mode: Mode) -> Option<BoundEntry> {
    if q != 2 || mode != Mode::Lpecc || (w, e) != (3, 1) {
        return None;
    }
    let name = "known_exact";
    let entry = |v: u64, clause: &str| {
        Some(BoundEntry::applicable(name, Rational::from_integer(BigInt::from(v)), clause))
    };
    match (t, n) {
        (1, 6) => entry(2, "C(6,1,3,1) = 2"),
        (2, 6) => entry(1, "C(6,2,3,1) = 1"),
        (1, n) if n >= 3 => entry(n * (n + 1) / 12, "C(n,1,3,1) = floor(n(n+1)/12) for n >= 3, n != 6"),
        (2, n) if n >= 4 && n % 2 == 0 => {
            entry(n * (n + 1) / 18, "C(n,2,3,1) = floor(n(n+1)/18) for even n >= 4, n != 6")
        }
        _ => None,
    }
}

/// One entry per bound, with applicability gates for the code's alphabet,
/// mode, and (w, e) shape. Upper bounds for the unrestricted mode also apply
/// to constant-weight codes; the converse does not hold.
pub fn bounds_summary(q: u64, n: u64, t: u64, w: u64, e: u64, mode: Mode) -> BoundReport {
    let mut entries = Vec::new();

    if let Some(k) = known_exact(q, n, t, w, e, mode) {
        entries.push(k);
    }

    if q == 2 && mode == Mode::Lpecc && w >= 2 && e == w - 1 {
        // e >= 1 is essential: with e = 0 extra codesets come for free
        match exact_e_eq_w_minus_1(n, t, w) {
            Ok(v) => entries.push(BoundEntry::applicable(
                "exact_e_eq_w_minus_1",
                Rational::from_integer(BigInt::from(v)),
                "C(n,t,w,w-1) = floor((n+1)/(w+t)) for w >= 2",
            )),
            Err(_) => entries.push(BoundEntry::not_applicable(
                "exact_e_eq_w_minus_1",
                format!("requires 1 <= t, w <= n (got n={n}, t={t}, w={w})"),
            )),
        }
    }

    entries.push(if q == 2 && w >= 2 && e == w - 2 {
        ub_large_w(n, t, w)
    } else {
        BoundEntry::not_applicable("ub_large_w", "requires a binary code with e = w-2")
    });

    entries.push(if q == 2 && (w, e) == (3, 1) {
        ub_w3_e1(n, t)
    } else {
        BoundEntry::not_applicable("ub_w3_e1", "requires a binary code with w=3, e=1")
    });

    entries.push(qary_ub(q, n, t, w, e));

    entries.push(if mode == Mode::Cpecc {
        cpecc_ub(q, n, t, w, e)
    } else {
        BoundEntry::not_applicable("cpecc_ub", "constant-weight mode only")
    });

    entries.push(if q == 2 && mode == Mode::Lpecc && (w, e) == (3, 1) {
        lb_frame3(n, t)
    } else {
        BoundEntry::not_applicable("lb_frame3", "requires a binary unrestricted-mode code with w=3, e=1")
    });

    entries.push(if q == 2 && mode == Mode::Lpecc && (w, e) == (4, 2) {
        lb_frame4(n, t)
    } else {
        BoundEntry::not_applicable("lb_frame4", "requires a binary unrestricted-mode code with w=4, e=2")
    });

    BoundReport { entries }
}

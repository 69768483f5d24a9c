//! Elliptic and hyperbolic conjugacy classes of the (2,3,8) triangle group.
//!
//! Hyperbolic classes of length at most `L` are enumerated over the tiling by
//! the fundamental triangle `F` with vertices `R` (order 8), `Q` and `xQ`
//! (order 3); `F` has the order-2 point `o = i` on its boundary and every
//! point of `F` lies within `D = max(d(o,R), d(o,Q))` of `o`. Tiles `γF`
//! adjacent to `F` are `xF`, `zF`, `z⁻¹F`, so breadth-first search over words
//! in `{x, z, z⁻¹}` visits tiles by edge adjacency.
//!
//! 1. Every class has a member whose axis meets `F`, hence passes within `D`
//!    of `o`; such a member `γ` moves `o` by at most `ℓ + 2D`, using
//!    `sinh(d(o,γo)/2) = cosh(r)·sinh(ℓ/2)` with `r = d(o, axis)`.
//! 2. Two such members are conjugate by some `δ` moving `o` at most
//!    `ℓ/2 + 2D`: move one axis onto the other and slide along it by a power
//!    of the target.
//! 3. The tiles meeting a ball are edge-connected, so the search restricted
//!    to tiles with `d(o,γo) ≤ ρ + D` reaches every `γ` with `d(o,γo) ≤ ρ`.
//!
//! The candidates of (1) are merged by the conjugators of (2); each merge is
//! verified exactly, and every member of a class stores a conjugator word
//! from the representative.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::field::FieldElem;
use super::mobius::{generator_matrices, word_matrix, Classification, Mobius};
use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::groupkit::Word;

/// Working precision for geometric bounds in the enumeration.
const GEOM_PREC: u32 = 96;

/// Largest length bound accepted by [`hyperbolic_classes_up_to`].
pub const MAX_LENGTH_BOUND: f64 = 3.5;

/// Default cap on the breadth-first search depth.
pub const DEFAULT_MAX_WORD_LENGTH: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conjugate {
    pub word: Word,
    /// `conjugator · representative · conjugator⁻¹ = word` in PSL(2,R).
    pub conjugator: Word,
}

#[derive(Clone, Debug)]
pub enum ClassKind {
    Elliptic {
        /// Order of the element.
        order: u32,
        /// Order of the stabilizer of its fixed point.
        centralizer_order: u32,
        /// `θ ∈ (0, π/2]` with `|tr| = 2cos θ`.
        half_angle: Enclosure,
        /// Oriented rotation invariant in `(0, π)`.
        rotation_angle: Enclosure,
        abelian_image: u8,
    },
    Hyperbolic {
        length: Enclosure,
        primitive: bool,
        /// `(index of δ's class, k)` when the class is that of `δ^k`, `k ≥ 2`.
        root: Option<(usize, u32)>,
    },
}

#[derive(Clone, Debug)]
pub struct GeodesicClass {
    pub kind: ClassKind,
    pub representative: Word,
    /// Trace of the representative, up to the sign ambiguity of PSL(2).
    pub trace: FieldElem,
    pub conjugates: Vec<Conjugate>,
}

impl GeodesicClass {
    pub fn is_elliptic(&self) -> bool {
        matches!(self.kind, ClassKind::Elliptic { .. })
    }

    pub fn is_hyperbolic(&self) -> bool {
        matches!(self.kind, ClassKind::Hyperbolic { .. })
    }

    pub fn length(&self) -> Option<&Enclosure> {
        match &self.kind {
            ClassKind::Hyperbolic { length, .. } => Some(length),
            _ => None,
        }
    }

    pub fn is_primitive(&self) -> bool {
        matches!(
            self.kind,
            ClassKind::Hyperbolic {
                primitive: true,
                ..
            }
        )
    }

    pub fn matrix(&self) -> Mobius {
        word_matrix(&self.representative).expect("class words use x, y, z")
    }
}

/// Image in the abelianization `Z/2` (x ↦ 1, y ↦ 0, z ↦ 1).
pub fn abelian_image(w: &Word) -> u8 {
    let odd = w
        .letters()
        .iter()
        .filter(|&&l| l.abs() == 1 || l.abs() == 3)
        .count();
    (odd % 2) as u8
}

/// Elliptic classes: `x`, `y`, `y²`, `z`, …, `z⁷`. Pairwise non-conjugacy is
/// certified by the oriented rotation angle together with the image in the
/// abelianization.
pub fn elliptic_classes() -> Result<Vec<GeodesicClass>> {
    let prec = 128;
    let mut specs: Vec<(Word, u32)> = vec![(Word(vec![1]), 2)];
    for k in 1..=2 {
        specs.push((Word(vec![2; k]), 3));
    }
    for k in 1..=7 {
        specs.push((Word(vec![3; k]), 8));
    }
    let mut out = Vec::with_capacity(specs.len());
    for (w, centralizer_order) in specs {
        let m = word_matrix(&w)?;
        let (order, half_angle) = match m.classify(prec) {
            Classification::Elliptic {
                order: Some(o),
                half_angle,
            } => (o, half_angle),
            other => {
                return Err(Error::VerificationFailed(format!(
                    "{w:?} is not elliptic: {other:?}"
                )))
            }
        };
        let rotation_angle = m
            .rotation_angle(prec)
            .ok_or_else(|| Error::VerificationFailed("rotation angle undecided".into()))?;
        out.push(GeodesicClass {
            kind: ClassKind::Elliptic {
                order,
                centralizer_order,
                half_angle,
                rotation_angle,
                abelian_image: abelian_image(&w),
            },
            trace: m.field_trace()?.abs(),
            representative: w,
            conjugates: Vec::new(),
        });
    }
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            let (
                ClassKind::Elliptic {
                    rotation_angle: a,
                    abelian_image: ai,
                    ..
                },
                ClassKind::Elliptic {
                    rotation_angle: b,
                    abelian_image: bi,
                    ..
                },
            ) = (&out[i].kind, &out[j].kind)
            else {
                unreachable!()
            };
            if a.overlaps(b) && ai == bi {
                return Err(Error::VerificationFailed(format!(
                    "cannot separate elliptic classes {i} and {j}"
                )));
            }
        }
    }
    Ok(out)
}

/// Bounds certifying a hyperbolic enumeration.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompletenessCertificate {
    pub length_bound: f64,
    /// Upper bound for `D`.
    pub domain_radius: f64,
    pub candidate_radius: f64,
    pub conjugator_radius: f64,
    pub search_radius: f64,
    /// Deepest breadth-first level needed; the word-length bound `b`.
    pub word_length_bound: u32,
    pub tiles: usize,
    pub candidates: usize,
    pub conjugators: usize,
    /// Number of classes found.
    pub classes: usize,
}

#[derive(Clone, Debug)]
pub struct HyperbolicEnumeration {
    pub classes: Vec<GeodesicClass>,
    pub certificate: CompletenessCertificate,
}

/// Upper bound of `D = max(d(o,R), d(o,Q))`.
pub fn domain_radius(prec: u32) -> Result<Enclosure> {
    let (_, y, z) = generator_matrices();
    let mut out: Option<Enclosure> = None;
    for m in [&y, &z] {
        let c = m
            .cosh_fixed_point_distance(prec)
            .ok_or_else(|| Error::VerificationFailed("vertex not elliptic".into()))?
            .acosh();
        out = Some(match out {
            None => c,
            Some(o) => o.max(&c),
        });
    }
    Ok(out.expect("two vertices"))
}

struct Element {
    m: Mobius,
    word: Word,
    depth: u32,
    cosh_disp: Enclosure,
}

/// Breadth-first search over `{x, z, z⁻¹}`. With `radius` set, only elements
/// with `d(o,γo) ≤ radius` (possibly) are kept; with `depth_cap`, only words
/// up to that length. Exceeding `max_depth` signals an incomplete search.
fn explore(
    radius: Option<&Enclosure>,
    depth_cap: Option<u32>,
    max_depth: u32,
) -> Result<Vec<Element>> {
    let (x, _, z) = generator_matrices();
    let steps = [(x.clone(), 1i32), (z.clone(), 3), (z.inverse(), -3)];
    let cosh_r = radius.map(|r| r.cosh());
    let mut elems = vec![Element {
        m: Mobius::identity(),
        word: Word::empty(),
        depth: 0,
        cosh_disp: Enclosure::one(GEOM_PREC),
    }];
    let mut seen: HashMap<Mobius, usize> = HashMap::new();
    seen.insert(Mobius::identity().canonical(), 0);
    let mut head = 0;
    while head < elems.len() {
        let depth = elems[head].depth;
        if depth_cap.is_some_and(|c| depth >= c) {
            head += 1;
            continue;
        }
        for (g, l) in &steps {
            let m = &elems[head].m * g;
            let key = m.canonical();
            if seen.contains_key(&key) {
                continue;
            }
            let cosh_disp = m.cosh_displacement(GEOM_PREC);
            if let Some(cr) = &cosh_r {
                if cosh_disp.certainly_gt(cr) {
                    continue;
                }
            }
            if depth + 1 > max_depth {
                return Err(Error::IncompleteEnumeration(format!(
                    "search needs words longer than {max_depth}"
                )));
            }
            let mut word = elems[head].word.clone();
            word.0.push(*l);
            seen.insert(key, elems.len());
            elems.push(Element {
                m,
                word,
                depth: depth + 1,
                cosh_disp,
            });
        }
        head += 1;
    }
    Ok(elems)
}

/// `(|tr| exact, ℓ, cosh r)` for hyperbolic elements.
fn hyperbolic_data(e: &Element) -> Result<Option<(FieldElem, Enclosure, Enclosure)>> {
    let tr = e.m.field_trace()?;
    let t2 = &tr * &tr;
    if (&t2 - &FieldElem::from_int(4)).signum() <= 0 {
        return Ok(None);
    }
    let half = tr.abs().enclose(GEOM_PREC).div_i64(2);
    let length = half.acosh().mul_i64(2);
    let sinh_half_len = (&half.sqr() - &Enclosure::one(GEOM_PREC)).sqrt();
    let sinh_half_disp = (&e.cosh_disp - &Enclosure::one(GEOM_PREC))
        .div_i64(2)
        .sqrt();
    let cosh_r = (&sinh_half_disp / &sinh_half_len).max(&Enclosure::one(GEOM_PREC));
    Ok(Some((tr.abs(), length, cosh_r)))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

fn f64_mul(a: &[f64; 4], b: &[f64; 4]) -> [f64; 4] {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

fn f64_inv(a: &[f64; 4]) -> [f64; 4] {
    [a[3], -a[1], -a[2], a[0]]
}

fn f64_close(a: &[f64; 4], b: &[f64; 4]) -> bool {
    let scale = 1.0 + a.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let tol = 1e-7 * scale;
    let same = a.iter().zip(b).all(|(u, v)| (u - v).abs() < tol);
    let opp = a.iter().zip(b).all(|(u, v)| (u + v).abs() < tol);
    same || opp
}

/// Groups `cands` (indices into `elems`) into conjugacy classes using the
/// conjugators `conjs`. Floating point proposes merges; each one is checked
/// exactly. Returns the union-find and the verified spanning edges
/// `(i, j, δ)` with `δ·C_i·δ⁻¹ = C_j`.
fn merge_classes(
    elems: &[Element],
    cands: &[usize],
    traces: &[FieldElem],
    conjs: &[usize],
) -> (UnionFind, Vec<(usize, usize, usize)>) {
    let mut buckets: HashMap<&FieldElem, Vec<usize>> = HashMap::new();
    for (i, t) in traces.iter().enumerate() {
        buckets.entry(t).or_default().push(i);
    }
    let cand_f: Vec<[f64; 4]> = cands.iter().map(|&c| elems[c].m.to_f64()).collect();
    let conj_f: Vec<([f64; 4], [f64; 4])> = conjs
        .iter()
        .map(|&d| {
            let m = elems[d].m.to_f64();
            (m, f64_inv(&m))
        })
        .collect();
    let mut uf = UnionFind::new(cands.len());
    let mut edges = Vec::new();
    for i in 0..cands.len() {
        let bucket = &buckets[&traces[i]];
        if bucket.len() == 1 {
            continue;
        }
        for (k, (dm, dinv)) in conj_f.iter().enumerate() {
            let c = f64_mul(&f64_mul(dm, &cand_f[i]), dinv);
            for &j in bucket {
                if j == i || !f64_close(&c, &cand_f[j]) {
                    continue;
                }
                if uf.find(i) == uf.find(j) {
                    continue;
                }
                let delta = &elems[conjs[k]].m;
                let exact = &(delta * &elems[cands[i]].m) * &delta.inverse();
                if exact.proj_eq(&elems[cands[j]].m) {
                    uf.union(i, j);
                    edges.push((i, j, conjs[k]));
                }
            }
        }
    }
    (uf, edges)
}

fn shortlex(a: &Word, b: &Word) -> std::cmp::Ordering {
    (a.len(), &a.0).cmp(&(b.len(), &b.0))
}

/// Enumerates hyperbolic classes with `ℓ ≤ L`, with the geometric
/// completeness certificate described in the module documentation.
pub fn enumerate_hyperbolic(l: f64, max_word_length: u32) -> Result<HyperbolicEnumeration> {
    if !(l > 0.0 && l <= MAX_LENGTH_BOUND) {
        return Err(Error::OutOfRange(format!(
            "length bound {l} outside (0, {MAX_LENGTH_BOUND}]"
        )));
    }
    let prec = GEOM_PREC;
    let big_l = Enclosure::from_f64(prec, l);
    let d_upper = domain_radius(prec)?;
    let d = Enclosure::new(prec, d_upper.upper(), d_upper.upper());
    let two_d = d.mul_i64(2);
    let half = Enclosure::from_ratio(prec, 1, 2);
    let cand_radius = &big_l + &two_d;
    let conj_radius = &(&big_l.div_i64(2) + &two_d) + &half;
    let search_radius = &cand_radius.max(&conj_radius) + &d;

    let elems = explore(Some(&search_radius), None, max_word_length)?;
    let cosh_conj = conj_radius.cosh();
    let cosh_d = d.cosh();

    let mut cands = Vec::new();
    let mut traces = Vec::new();
    let mut lengths = Vec::new();
    for (idx, e) in elems.iter().enumerate() {
        if let Some((tr, length, cosh_r)) = hyperbolic_data(e)? {
            if length.lower() > big_l.upper() || cosh_r.certainly_gt(&cosh_d) {
                continue;
            }
            if length.upper() > big_l.lower() {
                return Err(Error::IncompleteEnumeration(format!(
                    "length of {:?} not separated from the bound",
                    e.word
                )));
            }
            cands.push(idx);
            traces.push(tr);
            lengths.push(length);
        }
    }
    let conjs: Vec<usize> = (0..elems.len())
        .filter(|&i| !elems[i].cosh_disp.certainly_gt(&cosh_conj))
        .collect();

    let (mut uf, edges) = merge_classes(&elems, &cands, &traces, &conjs);
    let classes = assemble_classes(&elems, &cands, &traces, &lengths, &mut uf, &edges, l)?;

    let certificate = CompletenessCertificate {
        length_bound: l,
        domain_radius: d.upper_f64(),
        candidate_radius: cand_radius.upper_f64(),
        conjugator_radius: conj_radius.upper_f64(),
        search_radius: search_radius.upper_f64(),
        word_length_bound: elems.iter().map(|e| e.depth).max().unwrap_or(0),
        tiles: elems.len(),
        candidates: cands.len(),
        conjugators: conjs.len(),
        classes: classes.len(),
    };
    Ok(HyperbolicEnumeration {
        classes,
        certificate,
    })
}

#[allow(clippy::too_many_arguments)]
fn assemble_classes(
    elems: &[Element],
    cands: &[usize],
    traces: &[FieldElem],
    lengths: &[Enclosure],
    uf: &mut UnionFind,
    edges: &[(usize, usize, usize)],
    l: f64,
) -> Result<Vec<GeodesicClass>> {
    let n = cands.len();
    let mut adj: Vec<Vec<(usize, Word)>> = vec![Vec::new(); n];
    for &(i, j, dl) in edges {
        let w = elems[dl].word.clone();
        adj[i].push((j, w.clone()));
        adj[j].push((i, w.inverse()));
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..n {
        groups.entry(uf.find(i)).or_default().push(i);
    }
    // κ_i with κ_i·C_root·κ_i⁻¹ = C_i, along the spanning edges.
    let mut kappa: Vec<Option<Word>> = vec![None; n];
    for &root in groups.keys() {
        kappa[root] = Some(Word::empty());
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let ki = kappa[i].clone().expect("visited");
            for (j, delta) in &adj[i] {
                if kappa[*j].is_none() {
                    kappa[*j] = Some(delta.concat(&ki).free_reduce());
                    queue.push_back(*j);
                }
            }
        }
    }

    let mut raw: Vec<(Enclosure, GeodesicClass, Vec<usize>)> = Vec::new();
    let mut class_of_cand = vec![usize::MAX; n];
    for members in groups.values() {
        let rep = *members
            .iter()
            .min_by(|&&a, &&b| shortlex(&elems[cands[a]].word, &elems[cands[b]].word))
            .expect("nonempty");
        let k_rep_inv = kappa[rep].clone().expect("connected").inverse();
        let rep_m = &elems[cands[rep]].m;
        let mut conjugates = Vec::new();
        for &m in members {
            if m == rep {
                continue;
            }
            let conj = kappa[m]
                .clone()
                .expect("connected")
                .concat(&k_rep_inv)
                .free_reduce();
            let cm = word_matrix(&conj)?;
            if !(&(&cm * rep_m) * &cm.inverse()).proj_eq(&elems[cands[m]].m) {
                return Err(Error::VerificationFailed(
                    "stored conjugator does not verify".into(),
                ));
            }
            conjugates.push(Conjugate {
                word: elems[cands[m]].word.clone(),
                conjugator: conj,
            });
        }
        conjugates.sort_by(|a, b| shortlex(&a.word, &b.word));
        raw.push((
            lengths[rep].clone(),
            GeodesicClass {
                kind: ClassKind::Hyperbolic {
                    length: lengths[rep].clone(),
                    primitive: true,
                    root: None,
                },
                representative: elems[cands[rep]].word.clone(),
                trace: traces[rep].clone(),
                conjugates,
            },
            members.clone(),
        ));
    }
    raw.sort_by(|a, b| {
        a.0.mid_f64()
            .partial_cmp(&b.0.mid_f64())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| shortlex(&a.1.representative, &b.1.representative))
    });
    for (ci, (_, _, members)) in raw.iter().enumerate() {
        for &m in members {
            class_of_cand[m] = ci;
        }
    }
    let mut classes: Vec<GeodesicClass> = raw.into_iter().map(|(_, c, _)| c).collect();

    // Powers: δ^k for δ among the candidates.
    let index: HashMap<Mobius, usize> = cands
        .iter()
        .enumerate()
        .map(|(i, &c)| (elems[c].m.canonical(), i))
        .collect();
    for (i, &c) in cands.iter().enumerate() {
        let base = &elems[c].m;
        let mut p = base.clone();
        for k in 2u32.. {
            if lengths[i].lower_f64() * k as f64 > l {
                break;
            }
            p = &p * base;
            let Some(&j) = index.get(&p.canonical()) else {
                if lengths[i].upper_f64() * (k as f64) < l {
                    return Err(Error::VerificationFailed(
                        "power of a candidate is missing".into(),
                    ));
                }
                continue;
            };
            let target = class_of_cand[j];
            let root_class = class_of_cand[i];
            if let ClassKind::Hyperbolic {
                primitive, root, ..
            } = &mut classes[target].kind
            {
                if *primitive {
                    *primitive = false;
                    *root = Some((root_class, k));
                }
            }
        }
    }
    Ok(classes)
}

/// Hyperbolic classes with `ℓ ≤ L` at the default search cap.
pub fn hyperbolic_classes_up_to(l: f64) -> Result<Vec<GeodesicClass>> {
    Ok(enumerate_hyperbolic(l, DEFAULT_MAX_WORD_LENGTH)?.classes)
}

/// Outcome of re-running the class search over all words of length at most
/// `b + extra`, with no geometric filter.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StabilityReport {
    pub word_length_bound: u32,
    pub extended_bound: u32,
    pub base_classes: usize,
    pub extended_classes: usize,
    pub extended_elements: usize,
    pub identical: bool,
}

/// Independent cross-check: every word of length `≤ b + extra` is a candidate
/// or conjugator; the resulting classes must match the certified list one to
/// one with equal lengths.
pub fn stability_check(base: &HyperbolicEnumeration, extra: u32) -> Result<StabilityReport> {
    let l = base.certificate.length_bound;
    let b = base.certificate.word_length_bound;
    let big_l = Enclosure::from_f64(GEOM_PREC, l);
    let elems = explore(None, Some(b + extra), b + extra)?;
    let mut cands = Vec::new();
    let mut traces = Vec::new();
    for (idx, e) in elems.iter().enumerate() {
        if let Some((tr, length, _)) = hyperbolic_data(e)? {
            if length.lower() <= big_l.upper() {
                cands.push(idx);
                traces.push(tr);
            }
        }
    }
    let conjs: Vec<usize> = (0..elems.len()).collect();
    let (mut uf, _) = merge_classes(&elems, &cands, &traces, &conjs);
    let index: HashMap<Mobius, usize> = cands
        .iter()
        .enumerate()
        .map(|(i, &c)| (elems[c].m.canonical(), i))
        .collect();
    let mut hit: HashMap<usize, usize> = HashMap::new();
    let mut identical = true;
    for (ci, c) in base.classes.iter().enumerate() {
        let key = c.matrix().canonical();
        match index.get(&key) {
            Some(&j) => {
                let root = uf.find(j);
                if hit.insert(root, ci).is_some() {
                    identical = false;
                }
            }
            None => identical = false,
        }
    }
    let roots: std::collections::HashSet<usize> = (0..cands.len()).map(|i| uf.find(i)).collect();
    if roots.len() != base.classes.len() {
        identical = false;
    }
    Ok(StabilityReport {
        word_length_bound: b,
        extended_bound: b + extra,
        base_classes: base.classes.len(),
        extended_classes: roots.len(),
        extended_elements: elems.len(),
        identical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_elliptic_classes() {
        let e = elliptic_classes().unwrap();
        assert_eq!(e.len(), 10);
        match &e[0].kind {
            ClassKind::Elliptic {
                order, half_angle, ..
            } => {
                assert_eq!(*order, 2);
                assert!(half_angle.overlaps(&Enclosure::pi(128).div_i64(2)));
            }
            _ => panic!(),
        }
    }

    #[test]
    fn short_bound_is_empty() {
        assert!(hyperbolic_classes_up_to(0.1).unwrap().is_empty());
    }

    #[test]
    fn domain_radius_value() {
        let d = domain_radius(128).unwrap();
        assert!((d.mid_f64() - 0.764_29).abs() < 1e-4, "{d}");
    }
}

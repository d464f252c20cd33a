//! The semigroup of effective curve classes generated by the `l~_i`, the
//! `e_p` and the `gamma~_{p,i}`, with exhaustive decomposition search.
//!
//! Every generator has positive degree against the divisor
//! `N * sum pi*(H_i) - sum E_p`, `N = 1 + |Delta|`, so a class of degree `d`
//! is a sum of at most `d` generators and every search below terminates.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::ControlFlow;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::blowup::Blowup;
use crate::lattice::{CurveClass, DivisorClass, LatticeError};

/// Upper bound on the number of decompositions enumerated for one class.
pub const DECOMPOSITION_LIMIT: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error("class has degree {degree} above the search cap {cap}")]
    CapExceeded { degree: i64, cap: i64 },
    #[error("class is not in the effective semigroup")]
    NotEffective,
    #[error("more than {0} decompositions")]
    SearchLimit(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Generators sort lines first, then gammas by `(axis, point)`, then the
/// exceptional lines by point. Decompositions are searched in this order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorLabel {
    Line { axis: usize },
    Gamma { axis: usize, point: usize },
    Exceptional { point: usize },
}

impl GeneratorLabel {
    /// The axis the generator pushes forward to, if any.
    pub fn axis(&self) -> Option<usize> {
        match *self {
            GeneratorLabel::Line { axis } | GeneratorLabel::Gamma { axis, .. } => Some(axis),
            GeneratorLabel::Exceptional { .. } => None,
        }
    }

    pub fn name(&self, blowup: &Blowup) -> String {
        match *self {
            GeneratorLabel::Line { axis } => format!("l{}", axis + 1),
            GeneratorLabel::Gamma { axis, point } => {
                format!("g[{};{}]", blowup.point(point).label(), axis + 1)
            }
            GeneratorLabel::Exceptional { point } => format!("e[{}]", blowup.point(point).label()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    #[serde(skip)]
    pub label: GeneratorLabel,
    #[serde(rename = "label")]
    pub name: String,
    pub class: CurveClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct GeneratorSet {
    gens: Vec<Generator>,
}

impl GeneratorSet {
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Generator> {
        self.gens.iter()
    }

    pub fn get(&self, idx: usize) -> &Generator {
        &self.gens[idx]
    }

    pub fn position(&self, label: &GeneratorLabel) -> Option<usize> {
        self.gens.binary_search_by(|g| g.label.cmp(label)).ok()
    }
}

/// Expected generator count `r + |Delta| + sum_i (|Delta| - |Delta_i|)`.
pub fn expected_generator_count(blowup: &Blowup) -> usize {
    let k = blowup.num_points();
    blowup.r()
        + k
        + (0..blowup.r())
            .map(|i| k - blowup.axis_len(i))
            .sum::<usize>()
}

pub fn generators(blowup: &Blowup) -> GeneratorSet {
    let mut gens = Vec::with_capacity(expected_generator_count(blowup));
    let mut push = |label: GeneratorLabel, class: CurveClass| {
        gens.push(Generator {
            name: label.name(blowup),
            label,
            class,
        })
    };
    for axis in 0..blowup.r() {
        push(GeneratorLabel::Line { axis }, blowup.line(axis));
    }
    for axis in 0..blowup.r() {
        for point in 0..blowup.num_points() {
            if blowup.axis_of(point) != axis {
                let class = blowup
                    .class_gamma_tilde(point, axis)
                    .expect("point is off the axis");
                push(GeneratorLabel::Gamma { axis, point }, class);
            }
        }
    }
    for point in 0..blowup.num_points() {
        push(
            GeneratorLabel::Exceptional { point },
            blowup.exceptional_line(point),
        );
    }
    GeneratorSet { gens }
}

/// A nonnegative integer combination of generators, by generator index.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Decomposition {
    parts: Vec<(usize, u64)>,
}

impl Decomposition {
    fn from_counts(counts: &[u64]) -> Self {
        Decomposition {
            parts: counts
                .iter()
                .enumerate()
                .filter(|(_, &m)| m > 0)
                .map(|(i, &m)| (i, m))
                .collect(),
        }
    }

    /// `(generator index, multiplicity)` pairs in generator order.
    pub fn parts(&self) -> &[(usize, u64)] {
        &self.parts
    }

    pub fn num_parts(&self) -> u64 {
        self.parts.iter().map(|&(_, m)| m).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Re-sums the generator classes.
    pub fn class(&self, blowup: &Blowup, gens: &GeneratorSet) -> CurveClass {
        self.parts.iter().fold(blowup.zero_curve(), |acc, &(i, m)| {
            &acc + &gens.get(i).class.scale(m as i64)
        })
    }

    /// Labels repeated by multiplicity, in generator order.
    pub fn labels(&self, gens: &GeneratorSet) -> Vec<String> {
        self.parts
            .iter()
            .flat_map(|&(i, m)| std::iter::repeat_n(gens.get(i).name.clone(), m as usize))
            .collect()
    }

    pub fn to_json(&self, gens: &GeneratorSet) -> Value {
        let map: BTreeMap<String, u64> = self
            .parts
            .iter()
            .map(|&(i, m)| (gens.get(i).name.clone(), m))
            .collect();
        json!(map)
    }
}

/// Two nonzero effective classes summing to the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub first: CurveClass,
    pub second: CurveClass,
    pub first_parts: Decomposition,
    pub second_parts: Decomposition,
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|(i, m)| format!("{m}*#{i}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Per-search bookkeeping for the non-exceptional generators.
struct GenMove {
    axis: usize,
    /// `Some(p)` for `gamma~_{p,axis}`.
    point: Option<usize>,
}

pub struct EffectiveCone<'a> {
    blowup: &'a Blowup,
    gens: GeneratorSet,
    degree_divisor: DivisorClass,
    cap: i64,
    moves: Vec<GenMove>,
    last_index_on_axis: Vec<usize>,
    /// `gamma_index[q][i]`: index of `gamma~_{q,i}`, if it exists.
    gamma_index: Vec<Vec<Option<usize>>>,
}

impl<'a> EffectiveCone<'a> {
    /// Cone with the default search cap `10 N`.
    pub fn new(blowup: &'a Blowup) -> Self {
        let big_n = 1 + blowup.num_points() as i64;
        Self::with_cap(blowup, 10 * big_n)
    }

    pub fn with_cap(blowup: &'a Blowup, cap: i64) -> Self {
        let gens = generators(blowup);
        let big_n = 1 + blowup.num_points() as i64;
        let degree_divisor =
            DivisorClass::new(vec![big_n; blowup.r()], vec![-1; blowup.num_points()]);
        let mut moves = Vec::new();
        let mut last_index_on_axis = vec![0; blowup.r()];
        let mut gamma_index = vec![vec![None; blowup.r()]; blowup.num_points()];
        for (idx, g) in gens.iter().enumerate() {
            match g.label {
                GeneratorLabel::Line { axis } => {
                    moves.push(GenMove { axis, point: None });
                    last_index_on_axis[axis] = idx;
                }
                GeneratorLabel::Gamma { axis, point } => {
                    moves.push(GenMove {
                        axis,
                        point: Some(point),
                    });
                    last_index_on_axis[axis] = idx;
                    gamma_index[point][axis] = Some(idx);
                }
                GeneratorLabel::Exceptional { .. } => {}
            }
        }
        EffectiveCone {
            blowup,
            gens,
            degree_divisor,
            cap,
            moves,
            last_index_on_axis,
            gamma_index,
        }
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn cap(&self) -> i64 {
        self.cap
    }

    /// Degree against `N * sum pi*(H_i) - sum E_p`; additive, and positive
    /// on every generator.
    pub fn phi_degree(&self, c: &CurveClass) -> Result<i64, ConeError> {
        Ok(self.blowup.intersect(c, &self.degree_divisor)?)
    }

    fn guard(&self, c: &CurveClass) -> Result<i64, ConeError> {
        let degree = self.phi_degree(c)?;
        if degree > self.cap {
            return Err(ConeError::CapExceeded {
                degree,
                cap: self.cap,
            });
        }
        Ok(degree)
    }

    /// Depth-first search over nondecreasing generator sequences. The
    /// exceptional lines come last in the order and only adjust the
    /// `e`-coordinates, so once the multidegree is used up the remainder
    /// must be a nonnegative combination of `e_p`, read off directly.
    fn search(&self, target: &CurveClass, visit: &mut dyn FnMut(&[u64]) -> ControlFlow<()>) {
        if target.l().iter().any(|&x| x < 0) {
            return;
        }
        let mut rem_l = target.l().to_vec();
        let mut rem_e = target.e().to_vec();
        let mut counts = vec![0u64; self.gens.len()];
        let _ = self.dfs(0, &mut rem_l, &mut rem_e, &mut counts, visit);
    }

    fn dfs(
        &self,
        start: usize,
        rem_l: &mut [i64],
        rem_e: &mut [i64],
        counts: &mut [u64],
        visit: &mut dyn FnMut(&[u64]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if rem_l.iter().all(|&x| x == 0) {
            if rem_e.iter().all(|&x| x >= 0) {
                let offset = self.moves.len();
                for (p, &x) in rem_e.iter().enumerate() {
                    counts[offset + p] = x as u64;
                }
                let flow = visit(counts);
                for p in 0..rem_e.len() {
                    counts[offset + p] = 0;
                }
                return flow;
            }
            return ControlFlow::Continue(());
        }
        for idx in start..self.moves.len() {
            let mv = &self.moves[idx];
            if rem_l[mv.axis] == 0 {
                continue;
            }
            self.apply(mv, rem_l, rem_e, -1);
            counts[idx] += 1;
            let flow = if self.feasible(idx, rem_l, rem_e) {
                self.dfs(idx, rem_l, rem_e, counts, visit)
            } else {
                ControlFlow::Continue(())
            };
            counts[idx] -= 1;
            self.apply(mv, rem_l, rem_e, 1);
            flow?;
        }
        ControlFlow::Continue(())
    }

    /// Subtracts (`sign = -1`) or adds back (`sign = 1`) one generator.
    fn apply(&self, mv: &GenMove, rem_l: &mut [i64], rem_e: &mut [i64], sign: i64) {
        rem_l[mv.axis] += sign;
        if let Some(p) = mv.point {
            for q in self.blowup.axis_points(mv.axis) {
                rem_e[q] += sign;
            }
            rem_e[p] -= sign;
        }
    }

    /// Necessary conditions for the remainder to be reachable using
    /// generators with index `>= start`.
    fn feasible(&self, start: usize, rem_l: &[i64], rem_e: &[i64]) -> bool {
        if rem_l
            .iter()
            .zip(&self.last_index_on_axis)
            .any(|(&rl, &last)| rl > 0 && last < start)
        {
            return false;
        }
        for (q, &eq) in rem_e.iter().enumerate() {
            let j = self.blowup.axis_of(q);
            // once l~_j is behind us, every later axis-j move is a gamma,
            // and each lowers e_q by one
            let forced = if start > j { rem_l[j] } else { 0 };
            let gain: i64 = self.gamma_index[q]
                .iter()
                .zip(rem_l)
                .filter(|(gi, _)| gi.is_some_and(|gi| gi >= start))
                .map(|(_, &rl)| rl)
                .sum();
            if eq + gain < forced {
                return false;
            }
        }
        true
    }

    /// The first decomposition in generator order, or `None`.
    pub fn semigroup_member(&self, c: &CurveClass) -> Result<Option<Decomposition>, ConeError> {
        let degree = self.guard(c)?;
        if degree < 0 {
            return Ok(None);
        }
        let mut found = None;
        self.search(c, &mut |counts| {
            found = Some(Decomposition::from_counts(counts));
            ControlFlow::Break(())
        });
        if let Some(d) = &found {
            assert_eq!(
                &d.class(self.blowup, &self.gens),
                c,
                "decomposition must re-sum to its target"
            );
        }
        Ok(found)
    }

    /// Every decomposition of `c`, in search order.
    pub fn decompositions(&self, c: &CurveClass) -> Result<Vec<Decomposition>, ConeError> {
        let degree = self.guard(c)?;
        let mut out = Vec::new();
        if degree < 0 {
            return Ok(out);
        }
        let mut overflow = false;
        self.search(c, &mut |counts| {
            if out.len() >= DECOMPOSITION_LIMIT {
                overflow = true;
                return ControlFlow::Break(());
            }
            out.push(Decomposition::from_counts(counts));
            ControlFlow::Continue(())
        });
        if overflow {
            return Err(ConeError::SearchLimit(DECOMPOSITION_LIMIT));
        }
        Ok(out)
    }

    /// All unordered pairs `{c1, c2}` of nonzero semigroup classes with
    /// `c1 + c2 = c`, each witnessed by one pair of decompositions. Sorted
    /// by the flat coefficient vectors.
    pub fn two_part_decompositions(&self, c: &CurveClass) -> Result<Vec<Split>, ConeError> {
        let all = self.decompositions(c)?;
        if all.is_empty() {
            return Err(ConeError::NotEffective);
        }
        let mut splits: BTreeMap<(Vec<i64>, Vec<i64>), Split> = BTreeMap::new();
        for d in &all {
            let parts = d.parts();
            let mut pick = vec![0u64; parts.len()];
            loop {
                // advance the mixed-radix counter over sub-multisets
                let mut k = 0;
                while k < parts.len() && pick[k] == parts[k].1 {
                    pick[k] = 0;
                    k += 1;
                }
                if k == parts.len() {
                    break;
                }
                pick[k] += 1;
                let taken: u64 = pick.iter().sum();
                if taken == d.num_parts() {
                    continue;
                }
                let first_parts = Decomposition {
                    parts: parts
                        .iter()
                        .zip(&pick)
                        .filter(|(_, &m)| m > 0)
                        .map(|(&(i, _), &m)| (i, m))
                        .collect(),
                };
                let second_parts = Decomposition {
                    parts: parts
                        .iter()
                        .zip(&pick)
                        .filter(|(&(_, total), &m)| total > m)
                        .map(|(&(i, total), &m)| (i, total - m))
                        .collect(),
                };
                let first = first_parts.class(self.blowup, &self.gens);
                let second = second_parts.class(self.blowup, &self.gens);
                let (key, split) = if first.to_flat() <= second.to_flat() {
                    (
                        (first.to_flat(), second.to_flat()),
                        Split {
                            first,
                            second,
                            first_parts,
                            second_parts,
                        },
                    )
                } else {
                    (
                        (second.to_flat(), first.to_flat()),
                        Split {
                            first: second,
                            second: first,
                            first_parts: second_parts,
                            second_parts: first_parts,
                        },
                    )
                };
                splits.entry(key).or_insert(split);
            }
        }
        Ok(splits.into_values().collect())
    }

    /// True iff `c` has no splitting into two nonzero effective classes.
    ///
    /// Equivalent to `two_part_decompositions(c)` being empty: a split
    /// concatenates into a decomposition with at least two parts and
    /// conversely, so this stops at the first such decomposition.
    pub fn is_extremal(&self, c: &CurveClass) -> Result<bool, ConeError> {
        let degree = self.guard(c)?;
        if degree < 0 {
            return Err(ConeError::NotEffective);
        }
        let mut any = false;
        let mut multi = false;
        self.search(c, &mut |counts| {
            any = true;
            if counts.iter().sum::<u64>() >= 2 {
                multi = true;
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        if !any {
            return Err(ConeError::NotEffective);
        }
        Ok(!multi)
    }

    /// The decomposition `sum a_i l~_i + sum mu_p e_p`, `mu_p = a_axis(p) - eps_p`,
    /// valid when every `mu_p >= 0`.
    pub fn expansion_decomposition(
        &self,
        a: &[i64],
        eps: &[i64],
    ) -> Result<Decomposition, ConeError> {
        let blowup = self.blowup;
        let mut counts = vec![0u64; self.gens.len()];
        for (axis, &ai) in a.iter().enumerate() {
            if ai < 0 {
                return Err(ConeError::Precondition(format!("a_{} < 0", axis + 1)));
            }
            counts[axis] = ai as u64;
        }
        let offset = self.moves.len();
        for p in 0..blowup.num_points() {
            let mu = a[blowup.axis_of(p)] - eps[p];
            if mu < 0 {
                return Err(ConeError::Precondition(format!(
                    "eps exceeds the multidegree at {}",
                    blowup.point(p).label()
                )));
            }
            counts[offset + p] = mu as u64;
        }
        Ok(Decomposition::from_counts(&counts))
    }
}

/// Checks the single-point expansion identity: with `a_j = 0` for the axis
/// `j` of `q` and `eps` supported at `q`,
/// `expand_in_basis(a, eps) = (-eps_q + sum_{i != j} a_i) e_q + sum_{i != j} a_i gamma~_{q,i}`.
pub fn case3_identity_check(
    blowup: &Blowup,
    q: usize,
    a: &[i64],
    eps_q: i64,
) -> Result<bool, ConeError> {
    if q >= blowup.num_points() {
        return Err(LatticeError::PointOutOfRange { point: q }.into());
    }
    let j = blowup.axis_of(q);
    if a.len() != blowup.r() {
        return Err(ConeError::Precondition(format!(
            "a has {} entries",
            a.len()
        )));
    }
    if a[j] != 0 {
        return Err(ConeError::Precondition(format!("a_{} must be 0", j + 1)));
    }
    if a.iter().any(|&x| x < 0) {
        return Err(ConeError::Precondition("a must be nonnegative".into()));
    }
    let mut eps = vec![0; blowup.num_points()];
    eps[q] = eps_q;
    let lhs = blowup.expand_in_basis(a, &eps)?;
    let total: i64 = a.iter().sum();
    let mut rhs = blowup.exceptional_line(q).scale(total - eps_q);
    for (i, &ai) in a.iter().enumerate() {
        if i != j {
            rhs = &rhs + &blowup.class_gamma_tilde(q, i)?.scale(ai);
        }
    }
    Ok(lhs == rhs)
}

/// One row of the extremality table.
#[derive(Clone, Debug, Serialize)]
pub struct ExtremalRow {
    pub label: String,
    pub class: CurveClass,
    pub extremal: bool,
    /// Number of two-part splittings of twice the generator.
    pub double_splits: usize,
}

pub fn extremality_table(cone: &EffectiveCone<'_>) -> Result<Vec<ExtremalRow>, ConeError> {
    cone.generators()
        .iter()
        .map(|g| {
            Ok(ExtremalRow {
                label: g.name.clone(),
                class: g.class.clone(),
                extremal: cone.is_extremal(&g.class)?,
                double_splits: cone.two_part_decompositions(&g.class.scale(2))?.len(),
            })
        })
        .collect()
}

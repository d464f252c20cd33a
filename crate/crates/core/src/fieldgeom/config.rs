use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::field::{primitive_nth_root, FieldElement, PrimeField};
use super::generate::generate_config;
use super::FieldGeomError;

/// On-disk configuration document.
///
/// `base` is optional; when absent the base coordinates are produced by
/// [`generate_config`] from `seed` (default 0).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub n: u64,
    pub r: usize,
    pub s: Vec<usize>,
    pub q: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Vec<Vec<u64>>>,
}

impl ConfigFile {
    /// Sorted keys, no whitespace. Reports embed exactly this string.
    pub fn to_canonical_json(&self) -> String {
        let value = serde_json::to_value(self).expect("config serializes");
        serde_json::to_string(&value).expect("value serializes")
    }
}

/// Construction parameters together with the chosen orbit base points.
///
/// `Config::new` enforces the structural preconditions (distinct `s_i`,
/// `n s_i >= 3` when `r = 2`, `n | q - 1`, base shape). Base-point content
/// (nonzero, distinct orbits) is checked when the point set is built, and
/// genericity of the configuration by `validate_config`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    n: u64,
    r: usize,
    s: Vec<usize>,
    field: PrimeField,
    zeta: FieldElement,
    base: Vec<Vec<FieldElement>>,
    seed: Option<u64>,
}

/// Every violated structural constraint on `(n, r, s, q)`, in a fixed order.
pub fn structural_issues(n: u64, r: usize, s: &[usize], q: u64) -> Vec<FieldGeomError> {
    let mut issues = Vec::new();
    if let Err(e) = PrimeField::new(q) {
        issues.push(e);
    }
    if n < 2 {
        issues.push(FieldGeomError::OrderTooSmall(n));
    } else if q >= 2 && !(q - 1).is_multiple_of(n) {
        issues.push(FieldGeomError::NDoesNotDivide { n, q });
    }
    if r < 2 {
        issues.push(FieldGeomError::DimensionTooSmall(r));
    }
    if s.len() != r {
        issues.push(FieldGeomError::SLength {
            expected: r,
            got: s.len(),
        });
    }
    for (axis, &si) in s.iter().enumerate() {
        if si == 0 {
            issues.push(FieldGeomError::SNotPositive { axis });
        }
    }
    let distinct: BTreeSet<usize> = s.iter().copied().collect();
    if distinct.len() != s.len() {
        issues.push(FieldGeomError::SNotDistinct);
    }
    if r == 2 {
        for (axis, &si) in s.iter().enumerate() {
            let product = n * si as u64;
            if product < 3 {
                issues.push(FieldGeomError::OrbitTooSmall { axis, product });
            }
        }
    }
    issues
}

impl Config {
    pub fn new(
        n: u64,
        r: usize,
        s: Vec<usize>,
        q: u64,
        base: Vec<Vec<u64>>,
        seed: Option<u64>,
    ) -> Result<Self, FieldGeomError> {
        if let Some(e) = structural_issues(n, r, &s, q).into_iter().next() {
            return Err(e);
        }
        Self::assemble(n, r, s, q, base, seed)
    }

    /// Builds a configuration that may violate the structural preconditions
    /// on `s` (repeated or zero orbit counts). Test harness use only: the
    /// degenerate configurations it admits fall outside the construction.
    #[doc(hidden)]
    pub fn harness(
        n: u64,
        r: usize,
        s: Vec<usize>,
        q: u64,
        base: Vec<Vec<u64>>,
    ) -> Result<Self, FieldGeomError> {
        Self::assemble(n, r, s, q, base, None)
    }

    fn assemble(
        n: u64,
        r: usize,
        s: Vec<usize>,
        q: u64,
        base: Vec<Vec<u64>>,
        seed: Option<u64>,
    ) -> Result<Self, FieldGeomError> {
        let field = PrimeField::new(q)?;
        let zeta = primitive_nth_root(q, n)?;
        if s.len() != r {
            return Err(FieldGeomError::SLength {
                expected: r,
                got: s.len(),
            });
        }
        if base.len() != r {
            return Err(FieldGeomError::BaseRows {
                expected: r,
                got: base.len(),
            });
        }
        for (axis, (row, &si)) in base.iter().zip(&s).enumerate() {
            if row.len() != si {
                return Err(FieldGeomError::BaseShape {
                    axis,
                    expected: si,
                    got: row.len(),
                });
            }
        }
        let base = base
            .into_iter()
            .map(|row| row.into_iter().map(|v| field.element(v)).collect())
            .collect();
        Ok(Config {
            n,
            r,
            s,
            field,
            zeta,
            base,
            seed,
        })
    }

    /// Loads a configuration document, generating base points when absent.
    pub fn from_file(file: &ConfigFile) -> Result<Self, FieldGeomError> {
        match &file.base {
            Some(base) => Config::new(
                file.n,
                file.r,
                file.s.clone(),
                file.q,
                base.clone(),
                file.seed,
            ),
            None => generate_config(file.n, file.r, &file.s, file.q, file.seed.unwrap_or(0)),
        }
    }

    pub fn to_file(&self) -> ConfigFile {
        ConfigFile {
            n: self.n,
            r: self.r,
            s: self.s.clone(),
            q: self.field.modulus(),
            seed: self.seed,
            base: Some(
                self.base
                    .iter()
                    .map(|row| row.iter().map(|x| x.value()).collect())
                    .collect(),
            ),
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> &[usize] {
        &self.s
    }

    pub fn q(&self) -> u64 {
        self.field.modulus()
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn zeta(&self) -> FieldElement {
        self.zeta
    }

    pub fn base(&self) -> &[Vec<FieldElement>] {
        &self.base
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// `n * sum(s_i)`, the size of the point set.
    pub fn delta_size(&self) -> usize {
        self.n as usize * self.s.iter().sum::<usize>()
    }

    /// The `n` roots of unity `zeta^0, ..., zeta^(n-1)`.
    pub fn roots_of_unity(&self) -> Vec<FieldElement> {
        (0..self.n).map(|k| self.zeta.pow(k)).collect()
    }
}

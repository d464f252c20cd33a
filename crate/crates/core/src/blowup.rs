//! A configuration together with its point set: the shared context for the
//! lattice, cone, rigidity and vector-field computations.

use std::collections::HashMap;
use std::ops::Range;

use crate::fieldgeom::{build_delta, Config, DeltaPoint, FieldGeomError, PrimeField, ProjPoint};

#[derive(Clone, Debug)]
pub struct Blowup {
    config: Config,
    delta: Vec<DeltaPoint>,
    axis_ranges: Vec<Range<usize>>,
    lookup: HashMap<(usize, ProjPoint), usize>,
}

impl Blowup {
    pub fn new(config: Config) -> Result<Self, FieldGeomError> {
        let delta = build_delta(&config)?;
        let mut axis_ranges = Vec::with_capacity(config.r());
        let mut start = 0;
        for axis in 0..config.r() {
            let len = delta[start..].iter().take_while(|p| p.axis == axis).count();
            axis_ranges.push(start..start + len);
            start += len;
        }
        let lookup = delta
            .iter()
            .enumerate()
            .map(|(idx, p)| ((p.axis, p.coord), idx))
            .collect();
        Ok(Blowup {
            config,
            delta,
            axis_ranges,
            lookup,
        })
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    pub fn field(&self) -> &PrimeField {
        self.config.field()
    }

    pub fn r(&self) -> usize {
        self.config.r()
    }

    pub fn n(&self) -> u64 {
        self.config.n()
    }

    /// Points ordered by `(axis, orbit, torsion)`; indices into this slice
    /// are the point ids used throughout the crate.
    pub fn delta(&self) -> &[DeltaPoint] {
        &self.delta
    }

    pub fn num_points(&self) -> usize {
        self.delta.len()
    }

    pub fn point(&self, idx: usize) -> &DeltaPoint {
        &self.delta[idx]
    }

    pub fn axis_of(&self, idx: usize) -> usize {
        self.delta[idx].axis
    }

    /// Indices of the points lying on the `axis`-th line.
    pub fn axis_points(&self, axis: usize) -> Range<usize> {
        self.axis_ranges[axis].clone()
    }

    pub fn axis_len(&self, axis: usize) -> usize {
        self.axis_ranges[axis].len()
    }

    /// Index of the point of the `axis`-th line with coordinate `coord`.
    pub fn find(&self, axis: usize, coord: &ProjPoint) -> Option<usize> {
        self.lookup.get(&(axis, *coord)).copied()
    }

    /// Coordinates in `(P^1)^r` of the point with index `idx`.
    pub fn full_point(&self, idx: usize) -> Vec<ProjPoint> {
        let p = &self.delta[idx];
        let origin = ProjPoint::origin(self.field());
        (0..self.r())
            .map(|i| if i == p.axis { p.coord } else { origin })
            .collect()
    }
}

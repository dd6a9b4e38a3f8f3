//! The kernel of `δ`, one bidegree at a time.
//!
//! `δ` maps the component of bidegree `(a, b)` to `(a + 1, b - 1)`. Writing
//! it as a matrix in the two Hall bases turns the search for constants into
//! a nullspace computation.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::derivation::delta_word;
use crate::error::Error;
use crate::hall::{hall_basis, hall_basis_multidegree, HallWord, MultiDegree};
use crate::linalg::{nullspace, Matrix, RationalVector};
use crate::poly::{bracket, LiePoly, Scalar};

pub use crate::witt::witt_dim;

/// Coordinates of `p` in `basis`; terms outside the basis are an error.
pub fn coordinates(p: &LiePoly, basis: &[HallWord]) -> Result<RationalVector, Error> {
    let index: HashMap<&HallWord, usize> = basis.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut v = vec![Scalar::default(); basis.len()];
    for (w, c) in p {
        let &i = index
            .get(w)
            .ok_or_else(|| Error::Inhomogeneous(p.to_string()))?;
        v[i] = c.clone();
    }
    Ok(v)
}

/// The polynomial with coordinates `v` in `basis`.
pub fn from_coordinates(v: &[Scalar], basis: &[HallWord]) -> LiePoly {
    LiePoly::from_terms(basis.iter().cloned().zip(v.iter().cloned()))
}

/// `δ` restricted to one bidegree.
#[derive(Clone, Debug)]
pub struct DeltaMatrix {
    pub source: MultiDegree,
    /// `None` when `deg_y = 0`: `δ` is the zero map there.
    pub target: Option<MultiDegree>,
    pub source_basis: Vec<HallWord>,
    pub target_basis: Vec<HallWord>,
    /// Column `j` holds the coordinates of `δ(source_basis[j])`.
    pub matrix: Matrix,
}

impl DeltaMatrix {
    pub fn is_zero_map(&self) -> bool {
        self.target.is_none()
    }
}

pub fn delta_matrix(md: MultiDegree) -> Result<DeltaMatrix, Error> {
    let source_basis = hall_basis_multidegree(md)?;
    let Some(target) = md.delta_target() else {
        return Ok(DeltaMatrix {
            source: md,
            target: None,
            matrix: Matrix::zeros(0, source_basis.len()),
            source_basis,
            target_basis: Vec::new(),
        });
    };
    let target_basis = hall_basis_multidegree(target)?;
    let columns = source_basis
        .iter()
        .map(|w| coordinates(&delta_word(w), &target_basis))
        .collect::<Result<Vec<_>, _>>()?;
    let matrix = Matrix::from_columns(&columns, target_basis.len())?;
    Ok(DeltaMatrix {
        source: md,
        target: Some(target),
        source_basis,
        target_basis,
        matrix,
    })
}

/// A basis of the constants of bidegree `md`.
///
/// Each element is integral with content 1 and a positive coefficient on its
/// Hall-smallest word.
pub fn kernel_basis(md: MultiDegree) -> Result<Vec<LiePoly>, Error> {
    let dm = delta_matrix(md)?;
    Ok(nullspace(&dm.matrix)
        .iter()
        .map(|v| from_coordinates(v, &dm.source_basis).canonicalize())
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelComponent {
    pub deg_x: u32,
    pub deg_y: u32,
    pub dim: usize,
    pub basis: Vec<LiePoly>,
}

impl KernelComponent {
    pub fn multidegree(&self) -> MultiDegree {
        MultiDegree::new(self.deg_x, self.deg_y)
    }
}

/// Constants of every bidegree of total degree at most `max_degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelReport {
    pub max_degree: u32,
    /// Ordered by total degree, then `deg_x`.
    pub components: Vec<KernelComponent>,
}

impl KernelReport {
    pub fn component(&self, md: MultiDegree) -> Option<&KernelComponent> {
        self.components.iter().find(|c| c.multidegree() == md)
    }

    pub fn dim(&self, md: MultiDegree) -> usize {
        self.component(md).map_or(0, |c| c.dim)
    }

    /// `(total degree, dimension)` pairs.
    pub fn dims_by_degree(&self) -> Vec<(u32, usize)> {
        (1..=self.max_degree)
            .map(|n| {
                let d = self
                    .components
                    .iter()
                    .filter(|c| c.deg_x + c.deg_y == n)
                    .map(|c| c.dim)
                    .sum();
                (n, d)
            })
            .collect()
    }

    /// Only the components with a nonzero kernel.
    pub fn nonzero(&self) -> impl Iterator<Item = &KernelComponent> {
        self.components.iter().filter(|c| c.dim > 0)
    }
}

impl fmt::Display for KernelReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>7} {:>5} {:>4}  basis", "bidegree", "dimL", "dim")?;
        for c in &self.components {
            let md = c.multidegree();
            let dim_l = hall_basis_multidegree(md).map(|b| b.len()).unwrap_or(0);
            let first = c.basis.first().map(ToString::to_string).unwrap_or_default();
            writeln!(
                f,
                "{:>8} {:>5} {:>4}  {}",
                md.to_string(),
                dim_l,
                c.dim,
                first
            )?;
            for b in c.basis.iter().skip(1) {
                writeln!(f, "{:>8} {:>5} {:>4}  {}", "", "", "", b)?;
            }
        }
        Ok(())
    }
}

pub fn constants_up_to(max_degree: u32) -> Result<KernelReport, Error> {
    // Fill the shared tables before fanning out.
    for d in 1..=max_degree {
        hall_basis(d)?;
    }
    let components = MultiDegree::up_to(max_degree)
        .into_par_iter()
        .map(|md| {
            let basis = kernel_basis(md)?;
            Ok(KernelComponent {
                deg_x: md.deg_x,
                deg_y: md.deg_y,
                dim: basis.len(),
                basis,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(KernelReport {
        max_degree,
        components,
    })
}

/// Homogeneous `g` of bidegree `md` with `[g, x] + [δ(g), y] = 0`.
pub fn linear_equation_solutions(md: MultiDegree) -> Result<Vec<LiePoly>, Error> {
    let source = hall_basis_multidegree(md)?;
    let target_md = md + MultiDegree::new(1, 0);
    let target = hall_basis_multidegree(target_md)?;
    let x = LiePoly::x();
    let y = LiePoly::y();
    let columns = source
        .iter()
        .map(|w| {
            let g = LiePoly::word(w.clone());
            let value = bracket(&g, &x) + bracket(&delta_word(w), &y);
            coordinates(&value, &target)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let m = Matrix::from_columns(&columns, target.len())?;
    Ok(nullspace(&m)
        .iter()
        .map(|v| from_coordinates(v, &source).canonicalize())
        .collect())
}

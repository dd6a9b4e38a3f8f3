//! Lie subalgebras generated by homogeneous elements, truncated by degree,
//! and containment of the constants in them.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constants::{constants_up_to, coordinates, from_coordinates, KernelReport};
use crate::error::Error;
use crate::hall::{hall_basis, hall_basis_multidegree, HallWord, MultiDegree};
use crate::linalg::{RationalVector, RowSpace};
use crate::poly::{bracket, LiePoly};
use crate::pseudodet::{enumerate_constant_pseudodets, Shape};

/// One bidegree of a [`GradedSubalgebra`].
#[derive(Clone, Debug)]
pub struct Component {
    pub basis: Vec<HallWord>,
    pub span: RowSpace,
}

impl Component {
    fn new(md: MultiDegree) -> Result<Component, Error> {
        let basis = hall_basis_multidegree(md)?;
        let span = RowSpace::new(basis.len());
        Ok(Component { basis, span })
    }

    pub fn dim(&self) -> usize {
        self.span.rank()
    }

    /// Row-reduced spanning vectors in Hall coordinates.
    pub fn vectors(&self) -> Vec<RationalVector> {
        self.span.basis()
    }

    pub fn elements(&self) -> Vec<LiePoly> {
        self.vectors()
            .iter()
            .map(|v| from_coordinates(v, &self.basis))
            .collect()
    }

    pub fn contains(&self, p: &LiePoly) -> Result<bool, Error> {
        Ok(self.span.contains(&coordinates(p, &self.basis)?))
    }
}

/// The span, in every bidegree of total degree at most `bound`, of all
/// brackets of the generators.
#[derive(Clone, Debug)]
pub struct GradedSubalgebra {
    pub generators: Vec<LiePoly>,
    pub bound: u32,
    /// Only nonzero components are stored.
    pub components: BTreeMap<MultiDegree, Component>,
}

impl GradedSubalgebra {
    pub fn component(&self, md: MultiDegree) -> Option<&Component> {
        self.components.get(&md)
    }

    pub fn dim(&self, md: MultiDegree) -> usize {
        self.component(md).map_or(0, Component::dim)
    }

    pub fn contains(&self, p: &LiePoly) -> Result<bool, Error> {
        for (md, part) in p.homogeneous_parts() {
            match self.component(md) {
                Some(c) if c.contains(&part)? => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }
}

/// Builds the subalgebra degree by degree: component `(a,b)` is spanned by
/// the generators of that bidegree and all brackets `[u, v]` with `u`, `v`
/// from lower components whose bidegrees sum to `(a,b)`.
pub fn graded_closure(gens: &[LiePoly], bound: u32) -> Result<GradedSubalgebra, Error> {
    let mut by_md: BTreeMap<MultiDegree, Vec<&LiePoly>> = BTreeMap::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let md = g
            .multidegree()
            .ok_or_else(|| Error::Inhomogeneous(g.to_string()))?;
        if md.total() > bound {
            return Err(Error::GeneratorAboveBound {
                word: g.to_string(),
                degree: md.total(),
                bound,
            });
        }
        by_md.entry(md).or_default().push(g);
    }
    for d in 1..=bound {
        hall_basis(d)?;
    }

    let mut components: BTreeMap<MultiDegree, Component> = BTreeMap::new();
    let mut elements: BTreeMap<MultiDegree, Vec<LiePoly>> = BTreeMap::new();
    for n in 1..=bound {
        let targets: Vec<MultiDegree> = (0..=n).map(|a| MultiDegree::new(a, n - a)).collect();
        let built: Vec<(MultiDegree, Component)> = targets
            .par_iter()
            .map(|&md| -> Result<Option<(MultiDegree, Component)>, Error> {
                let mut comp = Component::new(md)?;
                if comp.basis.is_empty() {
                    return Ok(None);
                }
                for g in by_md.get(&md).into_iter().flatten() {
                    comp.span.insert(&coordinates(g, &comp.basis)?)?;
                }
                for (lmd, left) in &elements {
                    let Some(rmd) = difference(md, *lmd) else {
                        continue;
                    };
                    // Unordered pairs of bidegrees: [u, v] and [v, u] span the same line.
                    if rmd < *lmd {
                        continue;
                    }
                    let Some(right) = elements.get(&rmd) else {
                        continue;
                    };
                    for u in left {
                        for v in right {
                            let p = bracket(u, v);
                            if !p.is_zero() {
                                comp.span.insert(&coordinates(&p, &comp.basis)?)?;
                            }
                        }
                    }
                }
                Ok((comp.dim() > 0).then_some((md, comp)))
            })
            .collect::<Result<Vec<_>, Error>>()?
            .into_iter()
            .flatten()
            .collect();
        for (md, comp) in built {
            elements.insert(md, comp.elements());
            components.insert(md, comp);
        }
    }
    Ok(GradedSubalgebra {
        generators: gens.to_vec(),
        bound,
        components,
    })
}

fn difference(a: MultiDegree, b: MultiDegree) -> Option<MultiDegree> {
    let d = MultiDegree::new(a.deg_x.checked_sub(b.deg_x)?, a.deg_y.checked_sub(b.deg_y)?);
    (d.total() > 0).then_some(d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainmentEntry {
    pub deg_x: u32,
    pub deg_y: u32,
    pub kernel_dim: usize,
    pub subalgebra_dim: usize,
    /// Dimension of the intersection of the kernel with the subalgebra.
    pub intersection_dim: usize,
    pub contained: bool,
    /// A kernel basis element outside the subalgebra, if any.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<LiePoly>,
}

impl ContainmentEntry {
    pub fn multidegree(&self) -> MultiDegree {
        MultiDegree::new(self.deg_x, self.deg_y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeVerdict {
    pub degree: u32,
    pub contained: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainmentReport {
    pub max_degree: u32,
    /// Ordered by total degree, then `deg_x`.
    pub entries: Vec<ContainmentEntry>,
    pub degrees: Vec<DegreeVerdict>,
    pub contained: bool,
}

impl ContainmentReport {
    pub fn failures(&self) -> impl Iterator<Item = &ContainmentEntry> {
        self.entries.iter().filter(|e| !e.contained)
    }

    pub fn entry(&self, md: MultiDegree) -> Option<&ContainmentEntry> {
        self.entries.iter().find(|e| e.multidegree() == md)
    }
}

impl fmt::Display for ContainmentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:>8} {:>6} {:>6} {:>6}  verdict",
            "bidegree", "ker", "sub", "ker∩sub"
        )?;
        for e in &self.entries {
            if e.kernel_dim == 0 && e.subalgebra_dim == 0 {
                continue;
            }
            let verdict = if e.contained {
                "contained"
            } else {
                "NOT contained"
            };
            writeln!(
                f,
                "{:>8} {:>6} {:>6} {:>6}  {verdict}",
                e.multidegree().to_string(),
                e.kernel_dim,
                e.subalgebra_dim,
                e.intersection_dim
            )?;
            if let Some(c) = &e.counterexample {
                writeln!(f, "{:>8} outside: {c}", "")?;
            }
        }
        for d in &self.degrees {
            let verdict = if d.contained {
                "contained"
            } else {
                "NOT contained"
            };
            writeln!(f, "degree {:>2}: {verdict}", d.degree)?;
        }
        Ok(())
    }
}

/// Whether each kernel component lies in the subalgebra.
pub fn membership_report(
    s: &GradedSubalgebra,
    k: &KernelReport,
) -> Result<ContainmentReport, Error> {
    if s.bound < k.max_degree {
        return Err(Error::BoundMismatch {
            subalgebra: s.bound,
            kernel: k.max_degree,
        });
    }
    let mut entries = Vec::with_capacity(k.components.len());
    for kc in &k.components {
        let md = kc.multidegree();
        let basis = hall_basis_multidegree(md)?;
        let sub = s.component(md);
        let subalgebra_dim = sub.map_or(0, Component::dim);
        let mut joint = sub.map_or_else(|| RowSpace::new(basis.len()), |c| c.span.clone());
        let mut counterexample = None;
        for f in &kc.basis {
            let v = coordinates(f, &basis)?;
            if !joint.contains(&v) && counterexample.is_none() {
                counterexample = Some(f.clone());
            }
            joint.insert(&v)?;
        }
        let intersection_dim = kc.dim + subalgebra_dim - joint.rank();
        entries.push(ContainmentEntry {
            deg_x: md.deg_x,
            deg_y: md.deg_y,
            kernel_dim: kc.dim,
            subalgebra_dim,
            intersection_dim,
            contained: counterexample.is_none(),
            counterexample,
        });
    }
    let degrees: Vec<DegreeVerdict> = (1..=k.max_degree)
        .map(|n| DegreeVerdict {
            degree: n,
            contained: entries
                .iter()
                .filter(|e| e.deg_x + e.deg_y == n)
                .all(|e| e.contained),
        })
        .collect();
    Ok(ContainmentReport {
        max_degree: k.max_degree,
        contained: degrees.iter().all(|d| d.contained),
        entries,
        degrees,
    })
}

/// Printed with every conjecture report that finds a gap.
pub const CONJECTURE_CAVEAT: &str = "A component that is not contained does not by itself refute the \
conjecture that the constants are generated by x and the constant pseudodeterminants: the family of \
constant brackets [f, g] with δ^(r-1)(f) = α·δ^(k-1)(g) over arbitrary polynomials f, g is not \
enumerated here, so the generating set tested is only x together with pseudodeterminants of Hall words.";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub max_degree: u32,
    pub shape: Shape,
    pub generators: Vec<LiePoly>,
    pub report: ContainmentReport,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub caveat: Option<String>,
}

impl fmt::Display for ConjectureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "generators: x and {} constant pseudodeterminants (shape {}, degree <= {})",
            self.generators.len() - 1,
            self.shape,
            self.max_degree
        )?;
        write!(f, "{}", self.report)?;
        let verdict = if self.report.contained {
            "all constants lie in the generated subalgebra"
        } else {
            "some constants lie outside the generated subalgebra"
        };
        writeln!(f, "verdict: {verdict}")?;
        if let Some(c) = &self.caveat {
            writeln!(f, "note: {c}")?;
        }
        Ok(())
    }
}

/// Tests whether `x` and the constant pseudodeterminants generate every
/// constant up to `max_degree`. The verdict is reported, never assumed.
pub fn conjecture_check(max_degree: u32, shape: Shape) -> Result<ConjectureReport, Error> {
    let mut generators = vec![LiePoly::x()];
    generators.extend(
        enumerate_constant_pseudodets(max_degree, shape)?
            .into_iter()
            .map(|u| u.value.canonicalize()),
    );
    let closure = graded_closure(&generators, max_degree)?;
    let kernel = constants_up_to(max_degree)?;
    let report = membership_report(&closure, &kernel)?;
    let caveat = (!report.contained).then(|| CONJECTURE_CAVEAT.to_string());
    Ok(ConjectureReport {
        max_degree,
        shape,
        generators,
        report,
        caveat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn p(s: &str) -> LiePoly {
        parse(s).unwrap()
    }

    fn md(a: u32, b: u32) -> MultiDegree {
        MultiDegree::new(a, b)
    }

    #[test]
    fn closure_of_x() {
        let s = graded_closure(&[LiePoly::x()], 3).unwrap();
        assert_eq!(s.components.len(), 1);
        assert_eq!(s.dim(md(1, 0)), 1);
    }

    #[test]
    fn closure_of_x_and_yx() {
        let s = graded_closure(&[LiePoly::x(), p("[y,x]")], 5).unwrap();
        assert_eq!(s.dim(md(3, 2)), 1);
        assert!(s.contains(&p("[[y,x,x],[y,x]]")).unwrap());
        assert!(s.contains(&p("[y,x,x,x,x]")).unwrap());
        assert!(!s.contains(&p("[y,x,y]")).unwrap());
    }

    #[test]
    fn closure_rejects_bad_generators() {
        assert!(matches!(
            graded_closure(&[p("x + [y,x]")], 3),
            Err(Error::Inhomogeneous(_))
        ));
        assert!(matches!(
            graded_closure(&[p("[y,x,x,x]")], 3),
            Err(Error::GeneratorAboveBound { .. })
        ));
    }

    #[test]
    fn with_extra_generator() {
        let s = graded_closure(&[LiePoly::x(), p("[y,x]"), p("[[y,x,y],[y,x,x]]")], 7).unwrap();
        assert_eq!(s.dim(md(4, 3)), 2);
    }

    #[test]
    fn membership_small() {
        let s = graded_closure(&[LiePoly::x(), p("[y,x]")], 5).unwrap();
        let k = constants_up_to(5).unwrap();
        let r = membership_report(&s, &k).unwrap();
        assert!(r.contained);

        let k6 = constants_up_to(6).unwrap();
        assert!(matches!(
            membership_report(&s, &k6),
            Err(Error::BoundMismatch { .. })
        ));

        let s6 = graded_closure(&[LiePoly::x(), p("[y,x]")], 6).unwrap();
        let r = membership_report(&s6, &k6).unwrap();
        assert!(!r.contained);
        let bad: Vec<MultiDegree> = r.failures().map(ContainmentEntry::multidegree).collect();
        assert_eq!(bad, vec![md(3, 3)]);
        let e = r.entry(md(3, 3)).unwrap();
        assert_eq!((e.kernel_dim, e.intersection_dim), (1, 0));
        assert!(e.counterexample.is_some());
    }

    #[test]
    fn conjecture_small() {
        let r = conjecture_check(2, Shape::All).unwrap();
        assert!(r.report.contained);
        assert!(r.caveat.is_none());
    }
}

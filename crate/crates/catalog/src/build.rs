use liecraft_core::exactlin::{binomial, Subspace};
use liecraft_core::repcore::Representation;

use crate::archive::{AlgebraArchive, ArchiveError};
use crate::descriptor::Descriptor;

/// Sizes of an input known before building it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    /// `dim T`.
    pub dim: usize,
    /// Dimension of the closed orbit in `P(T)`.
    pub orbit_dim: usize,
    /// Rank of the semisimple part of `h`.
    pub rank: usize,
}

impl Shape {
    pub fn wedge_dim(&self) -> usize {
        self.dim * self.dim.saturating_sub(1) / 2
    }

    /// The orbit is all of `P(T)`.
    pub fn is_projective_space(&self) -> bool {
        self.orbit_dim + 1 == self.dim
    }

    /// `dim T = 2 dim Y + 2`, the dimension count of a Legendrian orbit.
    pub fn is_legendrian_count(&self) -> bool {
        self.dim == 2 * self.orbit_dim + 2
    }
}

pub fn shape(d: &Descriptor, archive: &AlgebraArchive) -> Result<Shape, ArchiveError> {
    Ok(match d {
        Descriptor::P1 => Shape {
            dim: 2,
            orbit_dim: 1,
            rank: 1,
        },
        Descriptor::Out { round, index } => {
            let o = archive
                .output(*round, *index)
                .ok_or(ArchiveError::MissingOutput(*round, *index))?;
            let dim = o
                .module
                .as_ref()
                .ok_or(ArchiveError::MissingOutput(*round, *index))?
                .dim;
            Shape {
                dim,
                orbit_dim: o.orbit_dim,
                rank: o.rank,
            }
        }
        Descriptor::Veronese { degree, inner } => {
            let s = shape(inner, archive)?;
            Shape {
                dim: binomial(s.dim + degree - 1, *degree),
                ..s
            }
        }
        Descriptor::Segre(fs) => {
            let mut acc = Shape {
                dim: 1,
                orbit_dim: 0,
                rank: 0,
            };
            for f in fs {
                let s = shape(f, archive)?;
                acc = Shape {
                    dim: acc.dim * s.dim,
                    orbit_dim: acc.orbit_dim + s.orbit_dim,
                    rank: acc.rank + s.rank,
                };
            }
            acc
        }
        Descriptor::SeriesA(k) => Shape {
            dim: 2 * (k - 1),
            orbit_dim: 0,
            rank: *k - 1,
        },
        Descriptor::SeriesC(m) => Shape {
            dim: 2 * (m - 1),
            orbit_dim: 2 * m - 3,
            rank: *m - 1,
        },
    })
}

/// The `h`-module `T` of a descriptor. The special series have no single
/// module and are rejected here.
pub fn build(d: &Descriptor, archive: &AlgebraArchive) -> Result<Representation, ArchiveError> {
    let mut r = match d {
        Descriptor::P1 => Representation::sl2_standard(),
        Descriptor::Out { round, index } => archive.module_of(*round, *index)?,
        Descriptor::Veronese { degree, inner } => build(inner, archive)?.symmetric_power(*degree),
        Descriptor::Segre(fs) => {
            let mut acc = build(&fs[0], archive)?;
            for f in &fs[1..] {
                acc = Representation::outer_tensor(&acc, &build(f, archive)?);
            }
            acc
        }
        Descriptor::SeriesA(_) | Descriptor::SeriesC(_) => {
            return Err(ArchiveError::Index("special series have no single module"))
        }
    };
    r.set_label(d.to_string());
    Ok(r)
}

/// `dim P(g·v)` for the extreme vector `v`.
pub fn orbit_dim(r: &Representation) -> usize {
    let Some(v) = r.extreme() else { return 0 };
    let images: Vec<_> = r
        .action()
        .iter()
        .map(|a| a.apply(v))
        .chain([v.clone()])
        .collect();
    Subspace::from_vectors(r.module_dim(), images.iter()).dim() - 1
}

/// Descriptors of the outputs a descriptor depends on, outermost first.
pub fn provenance(d: &Descriptor, archive: &AlgebraArchive) -> Vec<String> {
    let mut out = Vec::new();
    for (round, index) in d.references() {
        if let Some(o) = archive.output(round, index) {
            out.push(format!("out:{round}/{index} = {}", o.descriptor));
            out.extend(o.provenance.iter().cloned());
        }
    }
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::archive::ClassifyConfig;

    #[test]
    fn shapes_match_built_modules() {
        let a = AlgebraArchive::new(ClassifyConfig::default());
        for s in [
            "P1",
            "v2(P1)",
            "v3(P1)",
            "seg(P1,P1)",
            "seg(P1,P1,P1)",
            "seg(v2(P1),P1)",
        ] {
            let d: Descriptor = s.parse().unwrap();
            let sh = shape(&d, &a).unwrap();
            let r = build(&d, &a).unwrap();
            assert_eq!(sh.dim, r.module_dim(), "{s}");
            assert_eq!(sh.orbit_dim, orbit_dim(&r), "{s}");
        }
        assert!(shape(&"P1".parse().unwrap(), &a)
            .unwrap()
            .is_projective_space());
        assert!(shape(&"v3(P1)".parse().unwrap(), &a)
            .unwrap()
            .is_legendrian_count());
        assert!(build(&"out:1/0".parse().unwrap(), &a).is_err());
    }
}

use std::collections::HashMap;

use super::{make_algebra, Algebra, AlgebraError, Element};
use crate::linalg::{Fp, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

/// A quiver with relations. Paths are arrow-index sequences read left to
/// right, so `[a, b]` means "first `a`, then `b`" and needs
/// `target(a) = source(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    /// Each relation is `Σ c·path = 0`.
    pub relations: Vec<Vec<(i64, Vec<usize>)>>,
}

impl QuiverPresentation {
    fn arrow(source: usize, target: usize, label: &str) -> Arrow {
        Arrow {
            source,
            target,
            label: label.into(),
        }
    }

    /// `1 ⇉ 2` with arrows `a`, `b` and no relations.
    pub fn kronecker() -> Self {
        QuiverPresentation {
            vertices: vec!["e1".into(), "e2".into()],
            arrows: vec![Self::arrow(0, 1, "a"), Self::arrow(0, 1, "b")],
            relations: Vec::new(),
        }
    }

    /// Bound quiver of the trivial extension of the Kronecker algebra:
    /// `x1, y1 : 1 → 2`, `x2, y2 : 2 → 1`, with `x1y2 = y1x2`, `y2x1 = x2y1`
    /// and `x2x1 = x1x2 = y1y2 = y2y1 = 0`.
    pub fn trivial_extension_kronecker() -> Self {
        let (x1, y1, x2, y2) = (0, 1, 2, 3);
        QuiverPresentation {
            vertices: vec!["e1".into(), "e2".into()],
            arrows: vec![
                Self::arrow(0, 1, "x1"),
                Self::arrow(0, 1, "y1"),
                Self::arrow(1, 0, "x2"),
                Self::arrow(1, 0, "y2"),
            ],
            relations: vec![
                vec![(1, vec![x1, y2]), (-1, vec![y1, x2])],
                vec![(1, vec![y2, x1]), (-1, vec![x2, y1])],
                vec![(1, vec![x2, x1])],
                vec![(1, vec![x1, x2])],
                vec![(1, vec![y1, y2])],
                vec![(1, vec![y2, y1])],
            ],
        }
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        if self.vertices.is_empty() {
            return Err(AlgebraError::InvalidParameters(
                "quiver needs a vertex".into(),
            ));
        }
        for a in &self.arrows {
            if a.source >= self.vertices.len() || a.target >= self.vertices.len() {
                return Err(AlgebraError::InvalidParameters(format!(
                    "arrow {} has a bad endpoint",
                    a.label
                )));
            }
        }
        for (r, rel) in self.relations.iter().enumerate() {
            for (_, path) in rel {
                if path.len() < 2 {
                    return Err(AlgebraError::InadmissibleRelation(r));
                }
                if path.iter().any(|&a| a >= self.arrows.len()) || !self.composable(path) {
                    return Err(AlgebraError::InvalidParameters(format!(
                        "relation {r} has an invalid path"
                    )));
                }
            }
        }
        Ok(())
    }

    fn composable(&self, path: &[usize]) -> bool {
        path.windows(2)
            .all(|w| self.arrows[w[0]].target == self.arrows[w[1]].source)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Path {
    // length-0 paths are vertices
    vertex: usize,
    arrows: Vec<usize>,
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.arrows
            .cmp(&other.arrows)
            .then(self.vertex.cmp(&other.vertex))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Path {
    fn len(&self) -> usize {
        self.arrows.len()
    }
}

struct PathSpace<'a> {
    q: &'a QuiverPresentation,
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
}

impl<'a> PathSpace<'a> {
    /// All paths of length ≤ `n`, with coordinates ordered so that longer
    /// paths come first and, within a length, larger words come first.
    fn new(q: &'a QuiverPresentation, n: usize) -> Self {
        let mut layers: Vec<Vec<Path>> = vec![(0..q.vertices.len())
            .map(|v| Path {
                vertex: v,
                arrows: Vec::new(),
            })
            .collect()];
        for len in 1..=n {
            let mut next = Vec::new();
            for p in &layers[len - 1] {
                let end = p.arrows.last().map_or(p.vertex, |&a| q.arrows[a].target);
                for (ai, a) in q.arrows.iter().enumerate() {
                    if a.source == end {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(Path {
                            vertex: q.arrows[arrows[0]].source,
                            arrows,
                        });
                    }
                }
            }
            layers.push(next);
        }
        let mut paths: Vec<Path> = layers.into_iter().flatten().collect();
        paths.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| b.cmp(a)));
        let index = paths
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        PathSpace { q, paths, index }
    }

    fn start(&self, p: &Path) -> usize {
        p.vertex
    }

    fn end(&self, p: &Path) -> usize {
        p.arrows
            .last()
            .map_or(p.vertex, |&a| self.q.arrows[a].target)
    }

    fn concat(&self, a: &Path, b: &Path) -> Option<Path> {
        if self.end(a) != self.start(b) {
            return None;
        }
        let mut arrows = a.arrows.clone();
        arrows.extend_from_slice(&b.arrows);
        Some(Path {
            vertex: a.vertex,
            arrows,
        })
    }

    fn dim(&self) -> usize {
        self.paths.len()
    }
}

/// Path algebra modulo an admissible ideal, computed by saturating in
/// `kQ / R^{N+1}` for growing `N` until every path of length `N` lies in
/// the ideal. Surviving basis paths are the lexicographically smallest
/// normal words, ordered vertices, arrows, then longer paths.
pub fn quiver_algebra(field: Fp, q: &QuiverPresentation) -> Result<Algebra, AlgebraError> {
    q.validate()?;
    let longest = q
        .relations
        .iter()
        .flat_map(|r| r.iter().map(|t| t.1.len()))
        .max()
        .unwrap_or(0);
    let bound = 2 * q.arrows.len().max(1) * longest.max(1);
    for n in 1..=bound {
        let space = PathSpace::new(q, n);
        let ideal = relation_ideal(field, q, &space, n);
        let saturated = space
            .paths
            .iter()
            .enumerate()
            .filter(|(_, p)| p.len() == n)
            .all(|(i, _)| {
                let mut v = vec![0; space.dim()];
                v[i] = 1;
                ideal.contains(&v)
            });
        if saturated {
            return build_quotient(field, q, &space, &ideal, n);
        }
    }
    Err(AlgebraError::InfiniteDimensional(bound))
}

fn relation_ideal(field: Fp, q: &QuiverPresentation, space: &PathSpace, n: usize) -> Subspace {
    let mut rows = Vec::new();
    for rel in &q.relations {
        for left in space.paths.iter().filter(|p| p.len() + 2 <= n) {
            for right in space.paths.iter().filter(|p| left.len() + p.len() + 2 <= n) {
                let mut v = vec![0u32; space.dim()];
                let mut any = false;
                for (c, word) in rel {
                    let mid = Path {
                        vertex: q.arrows[word[0]].source,
                        arrows: word.clone(),
                    };
                    let Some(lm) = space.concat(left, &mid) else {
                        continue;
                    };
                    let Some(full) = space.concat(&lm, right) else {
                        continue;
                    };
                    if full.len() > n {
                        continue;
                    }
                    let i = space.index[&full];
                    v[i] = field.add(v[i], field.reduce(*c));
                    any = true;
                }
                if any && v.iter().any(|&x| x != 0) {
                    rows.push(v);
                }
            }
        }
    }
    Subspace::from_spanning(field, space.dim(), &rows)
}

fn build_quotient(
    field: Fp,
    q: &QuiverPresentation,
    space: &PathSpace,
    ideal: &Subspace,
    n: usize,
) -> Result<Algebra, AlgebraError> {
    let mut is_pivot = vec![false; space.dim()];
    for &c in ideal.pivots() {
        is_pivot[c] = true;
    }
    let mut survivors: Vec<usize> = (0..space.dim()).filter(|&i| !is_pivot[i]).collect();
    survivors.sort_by(|&a, &b| {
        let (pa, pb) = (&space.paths[a], &space.paths[b]);
        pa.len().cmp(&pb.len()).then_with(|| pa.cmp(pb))
    });
    let coord_of: HashMap<usize, usize> =
        survivors.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let dim = survivors.len();
    let normal_form = |path: &Path| -> Element {
        let mut out = vec![0; dim];
        if path.len() > n {
            return out;
        }
        let mut v = vec![0; space.dim()];
        v[space.index[path]] = 1;
        let r = ideal.reduce(&v);
        for (i, &c) in r.iter().enumerate() {
            if c != 0 {
                out[coord_of[&i]] = c;
            }
        }
        out
    };
    let label = |path: &Path| -> String {
        if path.arrows.is_empty() {
            q.vertices[path.vertex].clone()
        } else {
            path.arrows
                .iter()
                .map(|&a| q.arrows[a].label.as_str())
                .collect()
        }
    };
    let labels: Vec<String> = survivors.iter().map(|&i| label(&space.paths[i])).collect();
    let mut mult = Vec::new();
    for (a, &ia) in survivors.iter().enumerate() {
        for (b, &ib) in survivors.iter().enumerate() {
            let Some(prod) = space.concat(&space.paths[ia], &space.paths[ib]) else {
                continue;
            };
            for (k, &c) in normal_form(&prod).iter().enumerate() {
                if c != 0 {
                    mult.push((a, b, k, c as i64));
                }
            }
        }
    }
    let mut unit = vec![0; dim];
    for v in 0..q.vertices.len() {
        let p = Path {
            vertex: v,
            arrows: Vec::new(),
        };
        for (k, &c) in normal_form(&p).iter().enumerate() {
            unit[k] = field.add(unit[k], c);
        }
    }
    let radical: Vec<Element> = (0..q.arrows.len())
        .map(|a| {
            normal_form(&Path {
                vertex: q.arrows[a].source,
                arrows: vec![a],
            })
        })
        .collect();
    make_algebra(field, labels, &mult, unit)?
        .with_name(format!(
            "quiver(p={}, vertices={}, arrows={})",
            field.p(),
            q.vertices.len(),
            q.arrows.len()
        ))
        .with_radical_gens(radical)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Fp {
        Fp::new(3).unwrap()
    }

    #[test]
    fn kronecker_has_dim_four() {
        let a = quiver_algebra(f3(), &QuiverPresentation::kronecker()).unwrap();
        assert_eq!(a.labels(), ["e1", "e2", "a", "b"]);
    }

    #[test]
    fn trivial_extension_presentation_has_dim_eight() {
        let a = quiver_algebra(f3(), &QuiverPresentation::trivial_extension_kronecker()).unwrap();
        assert_eq!(a.dim(), 8);
        assert_eq!(
            a.labels(),
            ["e1", "e2", "x1", "y1", "x2", "y2", "x1y2", "x2y1"]
        );
        let (x1, y1, x2, y2) = (
            a.basis_vec(2),
            a.basis_vec(3),
            a.basis_vec(4),
            a.basis_vec(5),
        );
        assert_eq!(a.mul(&x1, &y2), a.mul(&y1, &x2));
        assert_eq!(a.mul(&y2, &x1), a.mul(&x2, &y1));
        assert_eq!(a.mul(&x1, &x2), a.zero());
    }

    #[test]
    fn single_loop_is_infinite() {
        let q = QuiverPresentation {
            vertices: vec!["e".into()],
            arrows: vec![Arrow {
                source: 0,
                target: 0,
                label: "l".into(),
            }],
            relations: Vec::new(),
        };
        assert!(matches!(
            quiver_algebra(f3(), &q),
            Err(AlgebraError::InfiniteDimensional(_))
        ));
    }

    #[test]
    fn loop_with_power_relation() {
        let q = QuiverPresentation {
            vertices: vec!["e".into()],
            arrows: vec![Arrow {
                source: 0,
                target: 0,
                label: "l".into(),
            }],
            relations: vec![vec![(1, vec![0, 0, 0])]],
        };
        let a = quiver_algebra(f3(), &q).unwrap();
        assert_eq!(a.dim(), 3);
        assert!(a.is_commutative());
    }

    #[test]
    fn short_relation_rejected() {
        let mut q = QuiverPresentation::kronecker();
        q.relations.push(vec![(1, vec![0]), (-1, vec![1])]);
        assert!(matches!(
            quiver_algebra(f3(), &q),
            Err(AlgebraError::InadmissibleRelation(0))
        ));
    }
}

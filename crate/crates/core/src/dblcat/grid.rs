use super::{DoubleCategory, SqId};
use crate::budget::{Budget, BudgetExceeded};
use crate::fincat::{MorId, ObjId};
use crate::search::{solve, Problem};

/// An `m × n` grid: `m` columns of squares horizontally, `n` rows vertically,
/// with all its edges and vertices. For `n = 0` it is a horizontal chain of
/// length `m`, for `m = 0` a vertical chain of length `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grid {
    pub m: usize,
    pub n: usize,
    /// `(n+1) × (m+1)` vertices, row-major.
    pub objects: Vec<ObjId>,
    /// `(n+1) × m` horizontal edges, row-major.
    pub hmors: Vec<MorId>,
    /// `n × (m+1)` vertical edges, row-major.
    pub vmors: Vec<MorId>,
    /// `n × m` squares, row-major.
    pub squares: Vec<SqId>,
}

impl Grid {
    pub fn object(&self, row: usize, col: usize) -> ObjId {
        self.objects[row * (self.m + 1) + col]
    }

    pub fn hmor(&self, row: usize, col: usize) -> MorId {
        self.hmors[row * self.m + col]
    }

    pub fn vmor(&self, row: usize, col: usize) -> MorId {
        self.vmors[row * (self.m + 1) + col]
    }

    pub fn square(&self, row: usize, col: usize) -> SqId {
        self.squares[row * self.m + col]
    }

    pub fn point(x: ObjId) -> Grid {
        Grid {
            m: 0,
            n: 0,
            objects: vec![x],
            hmors: vec![],
            vmors: vec![],
            squares: vec![],
        }
    }

    /// A horizontal chain, first morphism first.
    pub fn hchain(d: &DoubleCategory, start: ObjId, chain: &[MorId]) -> Grid {
        let mut objects = vec![start];
        objects.extend(chain.iter().map(|&h| d.horizontal().tgt(h)));
        Grid {
            m: chain.len(),
            n: 0,
            objects,
            hmors: chain.to_vec(),
            vmors: vec![],
            squares: vec![],
        }
    }

    /// A vertical chain, first morphism first.
    pub fn vchain(d: &DoubleCategory, start: ObjId, chain: &[MorId]) -> Grid {
        let mut objects = vec![start];
        objects.extend(chain.iter().map(|&v| d.vertical().tgt(v)));
        Grid {
            m: 0,
            n: chain.len(),
            objects,
            hmors: vec![],
            vmors: chain.to_vec(),
            squares: vec![],
        }
    }

    /// Grid from its squares (`m, n ≥ 1`), row-major.
    pub fn from_squares(d: &DoubleCategory, m: usize, n: usize, squares: &[SqId]) -> Grid {
        assert!(m >= 1 && n >= 1 && squares.len() == m * n);
        let at = |r: usize, c: usize| d.square(squares[r * m + c]);
        let mut hmors = Vec::with_capacity((n + 1) * m);
        for r in 0..=n {
            for c in 0..m {
                hmors.push(if r < n {
                    at(r, c).top
                } else {
                    at(n - 1, c).bottom
                });
            }
        }
        let mut vmors = Vec::with_capacity(n * (m + 1));
        for r in 0..n {
            for c in 0..=m {
                vmors.push(if c < m {
                    at(r, c).left
                } else {
                    at(r, m - 1).right
                });
            }
        }
        let mut objects = Vec::with_capacity((n + 1) * (m + 1));
        for r in 0..=n {
            for c in 0..=m {
                let h = hmors[r * m + c.min(m - 1)];
                objects.push(if c < m {
                    d.horizontal().src(h)
                } else {
                    d.horizontal().tgt(h)
                });
            }
        }
        Grid {
            m,
            n,
            objects,
            hmors,
            vmors,
            squares: squares.to_vec(),
        }
    }

    /// Remove vertical line `k`, composing the adjacent columns if it is
    /// interior.
    pub fn hface(&self, d: &DoubleCategory, k: usize) -> Grid {
        let hc = d.horizontal();
        self.hface_with(k, &|g, f| hc.comp(g, f), &|t, s| {
            d.hcomp(t, s).expect("composable")
        })
    }

    /// Remove horizontal line `k`, composing the adjacent rows if interior.
    pub fn vface(&self, d: &DoubleCategory, k: usize) -> Grid {
        let vc = d.vertical();
        self.transpose()
            .hface_with(k, &|g, f| vc.comp(g, f), &|t, s| {
                d.vcomp(t, s).expect("composable")
            })
            .transpose()
    }

    fn hface_with(
        &self,
        k: usize,
        edge_comp: &dyn Fn(usize, usize) -> usize,
        square_comp: &dyn Fn(usize, usize) -> usize,
    ) -> Grid {
        let (m, n) = (self.m, self.n);
        assert!(m >= 1 && k <= m);
        let mut objects = Vec::new();
        for r in 0..=n {
            for c in 0..=m {
                if c != k {
                    objects.push(self.object(r, c));
                }
            }
        }
        let mut vmors = Vec::new();
        for r in 0..n {
            for c in 0..=m {
                if c != k {
                    vmors.push(self.vmor(r, c));
                }
            }
        }
        let merge = |row: Vec<usize>, comp: &dyn Fn(usize, usize) -> usize| -> Vec<usize> {
            let mut out = Vec::new();
            for c in 0..m {
                if (k == 0 && c == 0) || (k == m && c == m - 1) || (k > 0 && k < m && c == k) {
                    continue;
                }
                if k > 0 && k < m && c == k - 1 {
                    out.push(comp(row[k], row[k - 1]));
                } else {
                    out.push(row[c]);
                }
            }
            out
        };
        let mut hmors = Vec::new();
        for r in 0..=n {
            let row = (0..m).map(|c| self.hmor(r, c)).collect();
            hmors.extend(merge(row, edge_comp));
        }
        let mut squares = Vec::new();
        for r in 0..n {
            let row = (0..m).map(|c| self.square(r, c)).collect();
            squares.extend(merge(row, square_comp));
        }
        Grid {
            m: m - 1,
            n,
            objects,
            hmors,
            vmors,
            squares,
        }
    }

    /// Duplicate vertical line `k`, inserting a column of identity squares.
    pub fn hdegen(&self, d: &DoubleCategory, k: usize) -> Grid {
        self.hdegen_with(k, &|x| d.horizontal().identity(x), &|v| d.vmor_square(v))
    }

    /// Duplicate horizontal line `k`, inserting a row of identity squares.
    pub fn vdegen(&self, d: &DoubleCategory, k: usize) -> Grid {
        self.transpose()
            .hdegen_with(k, &|x| d.vertical().identity(x), &|h| d.hmor_square(h))
            .transpose()
    }

    fn hdegen_with(
        &self,
        k: usize,
        edge_identity: &dyn Fn(ObjId) -> MorId,
        square_identity: &dyn Fn(MorId) -> SqId,
    ) -> Grid {
        let (m, n) = (self.m, self.n);
        assert!(k <= m);
        let mut objects = Vec::new();
        let mut vmors = Vec::new();
        let mut hmors = Vec::new();
        let mut squares = Vec::new();
        for r in 0..=n {
            for c in 0..=m {
                objects.push(self.object(r, c));
                if c == k {
                    objects.push(self.object(r, c));
                }
            }
            for c in 0..=m {
                if c == k {
                    hmors.push(edge_identity(self.object(r, k)));
                }
                if c < m {
                    hmors.push(self.hmor(r, c));
                }
            }
        }
        for r in 0..n {
            for c in 0..=m {
                vmors.push(self.vmor(r, c));
                if c == k {
                    vmors.push(self.vmor(r, c));
                }
            }
            for c in 0..=m {
                if c == k {
                    squares.push(square_identity(self.vmor(r, k)));
                }
                if c < m {
                    squares.push(self.square(r, c));
                }
            }
        }
        Grid {
            m: m + 1,
            n,
            objects,
            hmors,
            vmors,
            squares,
        }
    }

    /// The same grid read in the swapped double category.
    pub fn transpose(&self) -> Grid {
        let (m, n) = (self.m, self.n);
        let objects = (0..=m)
            .flat_map(|c| (0..=n).map(move |r| (r, c)))
            .map(|(r, c)| self.object(r, c))
            .collect();
        // Old vertical edges become horizontal: new row c, new column r.
        let hmors = (0..=m)
            .flat_map(|c| (0..n).map(move |r| (r, c)))
            .map(|(r, c)| self.vmor(r, c))
            .collect();
        let vmors = (0..m)
            .flat_map(|c| (0..=n).map(move |r| (r, c)))
            .map(|(r, c)| self.hmor(r, c))
            .collect();
        let squares = (0..m)
            .flat_map(|c| (0..n).map(move |r| (r, c)))
            .map(|(r, c)| self.square(r, c))
            .collect();
        Grid {
            m: n,
            n: m,
            objects,
            hmors,
            vmors,
            squares,
        }
    }
}

struct Tiling<'a> {
    d: &'a DoubleCategory,
    m: usize,
    n: usize,
}

impl Problem for Tiling<'_> {
    fn num_vars(&self) -> usize {
        self.m * self.n
    }

    fn domain(&self, a: &[usize], var: usize) -> Vec<usize> {
        let (r, c) = (var / self.m, var % self.m);
        if c > 0 {
            self.d
                .squares_with_left(self.d.square(a[var - 1]).right)
                .to_vec()
        } else if r > 0 {
            self.d
                .squares_with_top(self.d.square(a[var - self.m]).bottom)
                .to_vec()
        } else {
            (0..self.d.num_squares()).collect()
        }
    }

    fn consistent(&self, a: &[usize]) -> bool {
        let var = a.len() - 1;
        let (r, c) = (var / self.m, var % self.m);
        r == 0 || c == 0 || self.d.square(a[var - self.m]).bottom == self.d.square(a[var]).top
    }
}

struct Chain<'a> {
    cat: &'a crate::fincat::FinCategory,
    len: usize,
}

impl Problem for Chain<'_> {
    fn num_vars(&self) -> usize {
        self.len
    }

    fn domain(&self, a: &[usize], var: usize) -> Vec<usize> {
        if var == 0 {
            self.cat.morphism_ids().collect()
        } else {
            self.cat.outgoing(self.cat.tgt(a[var - 1])).to_vec()
        }
    }

    fn consistent(&self, _: &[usize]) -> bool {
        true
    }
}

/// Visit all `m × n` grids in lexicographic order of their squares (or of
/// their edges for `m = 0` or `n = 0`).
pub fn visit_grids(
    d: &DoubleCategory,
    m: usize,
    n: usize,
    budget: &Budget,
    mut visit: impl FnMut(Grid),
) -> Result<(), BudgetExceeded> {
    match (m, n) {
        (0, 0) => {
            budget.spend(d.num_objects() as u64)?;
            (0..d.num_objects()).for_each(|x| visit(Grid::point(x)));
            Ok(())
        }
        (m, 0) => solve(
            &Chain {
                cat: d.horizontal(),
                len: m,
            },
            budget,
            |a| visit(Grid::hchain(d, d.horizontal().src(a[0]), a)),
        ),
        (0, n) => solve(
            &Chain {
                cat: d.vertical(),
                len: n,
            },
            budget,
            |a| visit(Grid::vchain(d, d.vertical().src(a[0]), a)),
        ),
        (m, n) => solve(&Tiling { d, m, n }, budget, |a| {
            visit(Grid::from_squares(d, m, n, a))
        }),
    }
}

pub fn grids(
    d: &DoubleCategory,
    m: usize,
    n: usize,
    budget: &Budget,
) -> Result<Vec<Grid>, BudgetExceeded> {
    let mut out = Vec::new();
    visit_grids(d, m, n, budget, |g| out.push(g))?;
    Ok(out)
}

pub fn count_grids(
    d: &DoubleCategory,
    m: usize,
    n: usize,
    budget: &Budget,
) -> Result<usize, BudgetExceeded> {
    let mut count = 0;
    visit_grids(d, m, n, budget, |_| count += 1)?;
    Ok(count)
}

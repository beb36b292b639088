//! The reconstructed category: objects are multiplicity vectors, morphisms
//! `m → s` are `(s, m)`-type matrices over `A`.

use crate::algebra::{GradedAlgebra, Radical};
use crate::associator::{check_associator, check_pentagon_summed, AssociatorFamily};
use crate::blockmat::{self, BlockMatrix};
use crate::error::Result;
use crate::fusion::{FusionRing, Obj};
use crate::linalg::{Field, FieldKind};
use crate::phimap::{check_phi, hat_tensor, PhiTable};
use crate::report::{Locus, Report};

/// Fusion ring, graded algebra, `φ` and associator over a field.
#[derive(Clone, Debug, PartialEq)]
pub struct Quadruple<S> {
    pub field: FieldKind,
    pub fusion: FusionRing,
    pub algebra: GradedAlgebra<S>,
    pub phi: PhiTable<S>,
    pub assoc: AssociatorFamily<S>,
}

/// Which stages [`Quadruple::validate`] runs.
#[derive(Clone, Copy, Debug, Default)]
pub struct ValidateOptions {
    /// Also check the summed form of the pentagon.
    pub summed_pentagon: bool,
}

impl<S: Field> Quadruple<S> {
    pub fn rank(&self) -> usize {
        self.fusion.rank()
    }

    pub fn obj_tensor(&self, m: &Obj, s: &Obj) -> Obj {
        self.fusion.obj_tensor(m, s)
    }

    /// `X ⊗̂ Y`.
    pub fn hat(&self, x: &BlockMatrix<S>, y: &BlockMatrix<S>) -> BlockMatrix<S> {
        hat_tensor(&self.fusion, &self.algebra, &self.phi, x, y)
    }

    pub fn identity(&self, m: &Obj) -> BlockMatrix<S> {
        BlockMatrix::identity(&self.algebra, m)
    }

    pub fn compose(&self, x: &BlockMatrix<S>, y: &BlockMatrix<S>) -> Result<BlockMatrix<S>> {
        x.compose(&self.algebra, y)
    }

    /// Fusion, algebra, `φ` and associator checks in that order. A stage
    /// that fails stops the later ones, which are reported as skipped.
    pub fn validate(&self) -> Report {
        self.validate_with(ValidateOptions::default())
    }

    pub fn validate_with(&self, opts: ValidateOptions) -> Report {
        let mut report = Report::new();
        let field_ok = match self.field.validate() {
            Ok(()) => true,
            Err(e) => {
                report.fail("field", Locus::from_vec("field", vec![]), e.to_string());
                false
            }
        };
        let stages = ["fusion", "algebra", "phi", "assoc"];
        let mut stop = !field_ok;
        for stage in stages {
            if stop {
                report.skip(&format!("{stage}.*"), "an earlier stage failed".into());
                continue;
            }
            let part = match stage {
                "fusion" => self.fusion.check(),
                "algebra" => {
                    let mut r = Report::new();
                    if self.algebra.rank() != self.rank() {
                        r.fail(
                            "algebra.rank",
                            Locus::from_vec("n", vec![]),
                            format!("algebra has {} idempotents, ring has rank {}", self.algebra.rank(), self.rank()),
                        );
                    } else {
                        r.pass_count("algebra.rank", 1);
                        r.merge(self.algebra.check(&self.field));
                    }
                    r
                }
                "phi" => check_phi(&self.fusion, &self.algebra, &self.phi),
                _ => {
                    let mut r = check_associator(self);
                    if opts.summed_pentagon && r.is_ok() {
                        r.merge(check_pentagon_summed(self));
                    }
                    r
                }
            };
            stop = !part.is_ok();
            report.merge(part);
        }
        report
    }

    /// `dim Hom(m, s) = Σ s_i m_j dim e_i A e_j`.
    pub fn hom_dim(&self, m: &Obj, s: &Obj) -> usize {
        let n = self.rank();
        let mut total = 0;
        for i in 0..n {
            for j in 0..n {
                total += s.get(i) * m.get(j) * self.algebra.peirce_dim(i, j);
            }
        }
        total
    }

    /// `m + s` with projections `X: m+s → m`, `Y: m+s → s`; their
    /// transposes are the injections.
    pub fn direct_sum(&self, m: &Obj, s: &Obj) -> Result<DirectSum<S>> {
        let x = self.identity(m).hstack(&BlockMatrix::zero(m.clone(), s.clone()))?;
        let y = BlockMatrix::zero(s.clone(), m.clone()).hstack(&self.identity(s))?;
        Ok(DirectSum { object: m.add(s), proj_first: x, proj_second: y })
    }

    pub fn is_semisimple(&self) -> bool {
        self.algebra.is_semisimple_by_dimension()
    }

    /// Whether `m` is indecomposable, i.e. a single simple summand.
    pub fn is_indecomposable(&self, m: &Obj) -> bool {
        m.size() == 1
    }

    pub fn radical(&self) -> Result<Radical<S>> {
        self.algebra.radical(&self.field)
    }

    /// `(t, Y)` with `Y: t → m` the kernel of `x: m → s`.
    pub fn kernel(&self, x: &BlockMatrix<S>) -> Result<(Obj, BlockMatrix<S>)> {
        let y = blockmat::right_universal_annihilator(&self.algebra, &self.radical()?, x)?;
        Ok((y.col_type().clone(), y))
    }

    /// `(t, Y)` with `Y: s → t` the cokernel of `x: m → s`.
    pub fn cokernel(&self, x: &BlockMatrix<S>) -> Result<(Obj, BlockMatrix<S>)> {
        let y = blockmat::left_universal_annihilator(&self.algebra, &self.radical()?, x)?;
        Ok((y.row_type().clone(), y))
    }

    pub fn epi_mono(&self, x: &BlockMatrix<S>) -> Result<(BlockMatrix<S>, BlockMatrix<S>)> {
        blockmat::epi_mono_factor(&self.algebra, &self.radical()?, x)
    }

    /// Basis elements of `e_1 A e_j`, `j ≠ 1`, that are monomorphisms
    /// `e_j → e_1`. Any such element shows that `e_1` is not simple.
    pub fn monos_into_unit(&self) -> Vec<usize> {
        let alg = &self.algebra;
        (1..self.rank())
            .flat_map(|j| alg.peirce_basis(0, j).to_vec())
            .filter(|&p| blockmat::is_column_independent(alg, &BlockMatrix::basis_element(alg, p)))
            .collect()
    }

    /// `[m] = Σ m_i r_i`.
    pub fn green_ring_class(&self, m: &Obj) -> Vec<i64> {
        m.0.iter().map(|&v| v as i64).collect()
    }

    /// `[m ⊗̂ s] = [m][s]` on the given pairs.
    pub fn check_green_ring(&self, pairs: &[(Obj, Obj)]) -> Report {
        let mut report = Report::new();
        for (k, (m, s)) in pairs.iter().enumerate() {
            let lhs = self.green_ring_class(&self.obj_tensor(m, s));
            let rhs = self.fusion.multiply(&self.green_ring_class(m), &self.green_ring_class(s));
            if lhs != rhs {
                report.fail("green-ring", Locus::new("pair", [k]), format!("[{m}⊗{s}] differs from [{m}][{s}]"));
            }
        }
        report.pass_count("green-ring", pairs.len());
        report
    }
}

/// Biproduct data for `m + s`.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectSum<S> {
    pub object: Obj,
    pub proj_first: BlockMatrix<S>,
    pub proj_second: BlockMatrix<S>,
}

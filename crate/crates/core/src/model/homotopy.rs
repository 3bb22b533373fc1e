//! Two-stage homotopy between bundle-like metrics on a frame model.
//!
//! Stage one (`t ≤ 1/2`, `u = 2t`) keeps the transverse part of `g0` and
//! pushes its leaf part along `M_u = (1−u) I + u Π`, where `Π` is the
//! `g1`-orthogonal projection onto the leaf span; this moves the leaf
//! complement of `g0` onto that of `g1`. Stage two (`v = 2t − 1`) is the
//! convex combination `(1−v) ḡ + v g1` of the stage-one endpoint `ḡ` and `g1`.

use num_traits::{One, Zero};

use super::{FoliatedModel, ModelKind};
use crate::error::{Error, Result};
use crate::exterior::FramedMetric;
use crate::linalg::{orthogonal_projection, Matrix, SymmetricForm};
use crate::scalar::{frac, Rational};

fn congruence(m: &Matrix, g: &Matrix) -> Matrix {
    &(&m.transpose() * g) * m
}

/// The homotopy from `g0` (at `t = 0`) to `g1` (at `t = 1`) evaluated at the
/// given sample times; every sample is checked to be bundle-like with a
/// rational transverse volume.
pub fn metric_homotopy(
    g0: &FramedMetric,
    g1: &FramedMetric,
    m: &FoliatedModel,
    samples: &[Rational],
) -> Result<Vec<FramedMetric>> {
    let ModelKind::Lie { leaf, .. } = m.kind() else {
        return Err(Error::axiom("frame model", "metric homotopies need a frame model"));
    };
    let n = m.total_dim();
    if g0.dim() != n || g1.dim() != n {
        return Err(Error::FrameMismatch(g0.dim(), g1.dim()));
    }
    if g0.orientation() != g1.orientation() {
        return Err(Error::Homotopy {
            stage: 0,
            time: "0".into(),
            detail: "endpoint metrics carry different orientations".into(),
        });
    }
    let leaf_cols: Vec<Vec<Rational>> = leaf
        .iter()
        .map(|&l| (1..=n).map(|i| if i == l { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    let b = Matrix::from_columns(n, &leaf_cols);
    let id = Matrix::identity(n);
    let g_start = g0.gram().matrix();
    let g_end = g1.gram().matrix();
    let pi_start = orthogonal_projection(&b, g0.gram())?;
    let pi_end = orthogonal_projection(&b, g1.gram())?;
    let leaf_part = congruence(&pi_start, g_start);
    let transverse_part = congruence(&(&id - &pi_start), g_start);
    let midpoint = &congruence(&pi_end, &leaf_part) + &transverse_part;

    let half = frac(1, 2);
    samples
        .iter()
        .map(|t| {
            if t < &Rational::zero() || t > &Rational::one() {
                return Err(Error::Homotopy {
                    stage: 0,
                    time: t.to_string(),
                    detail: "sample outside [0, 1]".into(),
                });
            }
            let (stage, gram) = if t <= &half {
                let u = t * Rational::from_integer(2.into());
                let mix = &id.scale(&(Rational::one() - &u)) + &pi_end.scale(&u);
                (1u8, &congruence(&mix, &leaf_part) + &transverse_part)
            } else {
                let v = t * Rational::from_integer(2.into()) - Rational::one();
                (2u8, &midpoint.scale(&(Rational::one() - &v)) + &g_end.scale(&v))
            };
            let fail = |e: Error| Error::Homotopy {
                stage,
                time: t.to_string(),
                detail: e.to_string(),
            };
            let metric = SymmetricForm::new(gram)
                .and_then(|g| FramedMetric::new(g, g0.orientation().to_vec()))
                .map_err(fail)?;
            m.with_metric(metric.clone()).map_err(fail)?;
            Ok(metric)
        })
        .collect()
}

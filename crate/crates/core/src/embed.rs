//! Subfield inclusions F_{p^a} -> F_{p^b} for a | b.

use crate::error::{Error, Result};
use crate::factor::find_roots;
use crate::field::{Field, FieldElement};
use crate::fp;
use crate::poly::UniPoly;

/// A fixed field homomorphism from `source` into `target`, determined by
/// the image of the source generator (the smallest root of the source
/// modulus in the target, in canonical element order).
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    /// images of 1, a, a^2, ... for the power basis of the source
    basis_images: Vec<FieldElement>,
}

impl Embedding {
    pub fn new(source: &Field, target: &Field) -> Result<Self> {
        let no_embedding = || Error::NoEmbedding {
            from: source.to_string(),
            to: target.to_string(),
        };
        if source.is_finite() != target.is_finite() || source.characteristic() != target.characteristic() {
            return Err(no_embedding());
        }
        if !source.is_finite() || source == target {
            return Ok(Self::identity(source));
        }
        let (ms, mt) = (source.degree(), target.degree());
        if mt % ms != 0 {
            return Err(no_embedding());
        }
        let basis_images = if ms == 1 {
            vec![target.one()]
        } else {
            let modulus = source.modulus().expect("finite");
            let lifted = UniPoly::new(target, modulus.iter().map(|&c| target.from_i64(c as i64)).collect());
            let roots = find_roots(&lifted, 0)?;
            let gen = roots.into_iter().next().ok_or_else(no_embedding)?;
            let mut images = Vec::with_capacity(ms);
            let mut acc = target.one();
            for _ in 0..ms {
                images.push(acc.clone());
                acc = &acc * &gen;
            }
            images
        };
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            basis_images,
        })
    }

    pub fn identity(field: &Field) -> Self {
        Embedding {
            source: field.clone(),
            target: field.clone(),
            basis_images: Vec::new(),
        }
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn is_identity(&self) -> bool {
        self.basis_images.is_empty()
    }

    pub fn apply(&self, x: &FieldElement) -> FieldElement {
        assert!(x.field() == &self.source, "element outside embedding source");
        if self.is_identity() {
            return x.clone();
        }
        let coeffs = x.coeffs().expect("finite");
        let mut acc = self.target.zero();
        for (c, img) in coeffs.iter().zip(&self.basis_images) {
            if *c != 0 {
                acc += &(&self.target.from_i64(*c as i64) * img);
            }
        }
        acc
    }

    /// Preimage of `y`, or `None` when `y` is not in the image.
    pub fn restrict(&self, y: &FieldElement) -> Option<FieldElement> {
        assert!(y.field() == &self.target, "element outside embedding target");
        if self.is_identity() {
            return Some(y.clone());
        }
        let p = self.target.characteristic();
        let ms = self.source.degree();
        let mt = self.target.degree();
        // solve sum_i a_i * image_i = y over F_p, augmented matrix mt x (ms+1)
        let mut rows: Vec<Vec<u64>> = (0..mt)
            .map(|r| {
                let mut row: Vec<u64> = self.basis_images.iter().map(|img| img.coeffs().unwrap()[r]).collect();
                row.push(y.coeffs().unwrap()[r]);
                row
            })
            .collect();
        let mut pivot_row = 0;
        let mut pivots = Vec::with_capacity(ms);
        for col in 0..ms {
            let Some(found) = (pivot_row..mt).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(pivot_row, found);
            let inv = fp::inv_scalar(rows[pivot_row][col], p);
            for v in rows[pivot_row].iter_mut() {
                *v = fp::mul_mod(*v, inv, p);
            }
            let pivot = rows[pivot_row].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != pivot_row && row[col] != 0 {
                    let factor = row[col];
                    for (v, &q) in row.iter_mut().zip(&pivot) {
                        *v = (*v + p - fp::mul_mod(factor, q, p)) % p;
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        if rows[pivot_row..].iter().any(|row| row[ms] != 0) {
            return None;
        }
        let mut coeffs = vec![0i64; ms];
        for (r, &col) in pivots.iter().enumerate() {
            coeffs[col] = rows[r][ms] as i64;
        }
        Some(self.source.from_coeffs(&coeffs).expect("finite"))
    }
}

/// One-off embedding of a single element; builds the [`Embedding`] each call.
pub fn embed(x: &FieldElement, target: &Field) -> Result<FieldElement> {
    Ok(Embedding::new(x.field(), target)?.apply(x))
}

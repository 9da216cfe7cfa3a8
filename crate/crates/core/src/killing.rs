//! Special conformal Killing tensors on the plane in null coordinates.
//!
//! With `g_zw = 1` a trace-free special conformal Killing tensor is fixed by
//! five numbers. Its position-dependent components are
//!
//! ```text
//! L_zz = A_zz + 2 b_z w + c w²      L_ww = A_ww + 2 b_w z + c z²
//! L_zw = A_zw + b_z z + b_w w + c z w,   λ = 2 L_zw
//! ```
//!
//! and the associated Killing tensor is `K = L − λ g`.

use serde::{Deserialize, Serialize};

use crate::exact::{BiPoly, GaussRat, Var};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecialConformalKillingTensor {
    #[serde(rename = "A_zz")]
    pub a_zz: GaussRat,
    pub b_z: GaussRat,
    pub c: GaussRat,
    pub b_w: GaussRat,
    #[serde(rename = "A_ww")]
    pub a_ww: GaussRat,
}

/// Position-dependent components of a special conformal Killing tensor.
#[derive(Clone, Debug, PartialEq)]
pub struct ScktField {
    pub l_zz: BiPoly,
    pub l_ww: BiPoly,
    pub l_zw: BiPoly,
    pub lambda: BiPoly,
    pub lambda_z: BiPoly,
    pub lambda_w: BiPoly,
    pub c: GaussRat,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KillingTensorField {
    pub k_zz: BiPoly,
    pub k_zw: BiPoly,
    pub k_ww: BiPoly,
}

impl SpecialConformalKillingTensor {
    pub fn new(a_zz: GaussRat, b_z: GaussRat, c: GaussRat, b_w: GaussRat, a_ww: GaussRat) -> Self {
        Self { a_zz, b_z, c, b_w, a_ww }
    }

    pub fn from_ints(v: [i64; 5]) -> Self {
        let [a, b, c, d, e] = v.map(GaussRat::from_int);
        Self::new(a, b, c, d, e)
    }

    pub fn zero() -> Self {
        Self::from_ints([0; 5])
    }

    /// The induced 5-vector `(A_zz, 2b_z, c, 2b_w, A_ww)`.
    pub fn five_vector(&self) -> [GaussRat; 5] {
        let two = GaussRat::from_int(2);
        [
            self.a_zz.clone(),
            &two * &self.b_z,
            self.c.clone(),
            &two * &self.b_w,
            self.a_ww.clone(),
        ]
    }

    /// `α·self + β·other`.
    pub fn combine(&self, alpha: &GaussRat, other: &Self, beta: &GaussRat) -> Self {
        let f = |x: &GaussRat, y: &GaussRat| &(alpha * x) + &(beta * y);
        Self {
            a_zz: f(&self.a_zz, &other.a_zz),
            b_z: f(&self.b_z, &other.b_z),
            c: f(&self.c, &other.c),
            b_w: f(&self.b_w, &other.b_w),
            a_ww: f(&self.a_ww, &other.a_ww),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.five_vector().iter().all(GaussRat::is_zero)
    }

    pub fn to_field(&self) -> ScktField {
        self.to_field_with_trace(&GaussRat::zero())
    }

    /// Field of `L + a_zw·g`, i.e. with the metric direction added back.
    pub fn to_field_with_trace(&self, a_zw: &GaussRat) -> ScktField {
        let two = GaussRat::from_int(2);
        let b2z = &two * &self.b_z;
        let b2w = &two * &self.b_w;
        let c2 = &two * &self.c;
        let l_zz = BiPoly::from_terms([
            ((0, 0), self.a_zz.clone()),
            ((0, 1), b2z.clone()),
            ((0, 2), self.c.clone()),
        ]);
        let l_ww = BiPoly::from_terms([
            ((0, 0), self.a_ww.clone()),
            ((1, 0), b2w.clone()),
            ((2, 0), self.c.clone()),
        ]);
        let l_zw = BiPoly::from_terms([
            ((0, 0), a_zw.clone()),
            ((1, 0), self.b_z.clone()),
            ((0, 1), self.b_w.clone()),
            ((1, 1), self.c.clone()),
        ]);
        let lambda = l_zw.scale(&two);
        let lambda_z = BiPoly::from_terms([((0, 0), b2z), ((0, 1), c2.clone())]);
        let lambda_w = BiPoly::from_terms([((0, 0), b2w), ((1, 0), c2)]);
        ScktField { l_zz, l_ww, l_zw, lambda, lambda_z, lambda_w, c: self.c.clone() }
    }

    pub fn to_killing(&self) -> KillingTensorField {
        self.to_field().to_killing()
    }

    /// Killing tensor of `L + a_zw·g`; the metric alone (`a_zw = 1`) gives `−g`.
    pub fn to_killing_with_trace(&self, a_zw: &GaussRat) -> KillingTensorField {
        self.to_field_with_trace(a_zw).to_killing()
    }
}

impl ScktField {
    /// `K = L − λ g`; only the `zw` slot sees the metric.
    pub fn to_killing(&self) -> KillingTensorField {
        KillingTensorField {
            k_zz: self.l_zz.clone(),
            k_zw: &self.l_zw - &self.lambda,
            k_ww: self.l_ww.clone(),
        }
    }
}

impl KillingTensorField {
    pub fn metric() -> Self {
        Self { k_zz: BiPoly::zero(), k_zw: BiPoly::one(), k_ww: BiPoly::zero() }
    }

    /// Components `zzz, zzw, zww, www` of the symmetrized derivative
    /// `K_(ij,k)`; the tensor is Killing iff all four vanish.
    pub fn killing_residual(&self) -> [BiPoly; 4] {
        let three = GaussRat::from_int(3);
        let two = GaussRat::from_int(2);
        [
            self.k_zz.diff(Var::Z).scale(&three),
            &self.k_zz.diff(Var::W) + &self.k_zw.diff(Var::Z).scale(&two),
            &self.k_ww.diff(Var::Z) + &self.k_zw.diff(Var::W).scale(&two),
            self.k_ww.diff(Var::W).scale(&three),
        ]
    }

    pub fn is_killing(&self) -> bool {
        self.killing_residual().iter().all(BiPoly::is_zero)
    }
}

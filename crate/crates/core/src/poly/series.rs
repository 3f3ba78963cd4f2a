use super::{MultiIndex, Poly};
use crate::error::Result;
use crate::exact::Rat;

/// A polynomial known only up to total degree `order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    poly: Poly,
    order: u32,
}

impl Series {
    /// Truncates `poly` to `order`.
    pub fn new(poly: Poly, order: u32) -> Self {
        Series {
            poly: poly.truncated(order),
            order,
        }
    }

    pub fn zero(dim: usize, order: u32) -> Self {
        Series {
            poly: Poly::zero(dim),
            order,
        }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.poly.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn coeff(&self, index: &MultiIndex) -> Rat {
        self.poly.coeff(index)
    }

    /// Product, valid to the smaller of the two orders.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        let order = self.order.min(other.order);
        Ok(Series {
            poly: self.poly.mul_truncated(&other.poly, order)?,
            order,
        })
    }

    pub fn mul_poly(&self, p: &Poly) -> Result<Series> {
        Ok(Series {
            poly: self.poly.mul_truncated(p, self.order)?,
            order: self.order,
        })
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        let order = self.order.min(other.order);
        Ok(Series::new(self.poly.checked_add(&other.poly)?, order))
    }

    pub fn scale(&self, k: &Rat) -> Series {
        Series {
            poly: self.poly.scale(k),
            order: self.order,
        }
    }

    /// Lowers the stated order (never raises it).
    pub fn truncate(&self, order: u32) -> Series {
        Series::new(self.poly.clone(), order.min(self.order))
    }

    /// Partial derivative; the order drops by one. An order-0 series has
    /// no information left after differentiation and is returned as zero.
    pub fn partial(&self, k: usize) -> Series {
        if self.order == 0 {
            return Series::zero(self.dim(), 0);
        }
        Series::new(self.poly.partial(k), self.order - 1)
    }
}

//! Alexander polynomial of a knot diagram by Fox calculus on the Wirtinger
//! presentation, with a fraction-free determinant over Laurent polynomials.

use crate::error::ComputeError;
use crate::grid::GridDiagram;
use crate::laurent::LaurentPoly;
use crate::planar::{planar_diagram, PlanarDiagram};

/// Dense Laurent polynomial `q^low * (c0 + c1 q + ...)` with checked i128
/// arithmetic, used only inside the elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Poly {
    low: i64,
    coeffs: Vec<i128>,
}

type Res<T> = Result<T, ComputeError>;

fn overflow() -> ComputeError {
    ComputeError::Overflow("alexander determinant")
}

impl Poly {
    fn zero() -> Self {
        Poly { low: 0, coeffs: Vec::new() }
    }

    fn term(c: i128, e: i64) -> Self {
        Poly { low: e, coeffs: vec![c] }.trimmed()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        self.coeffs.drain(..lead);
        self.low += lead as i64;
        if self.coeffs.is_empty() {
            self.low = 0;
        }
        self
    }

    fn add(&self, other: &Poly) -> Res<Poly> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let low = self.low.min(other.low);
        let high = (self.low + self.coeffs.len() as i64).max(other.low + other.coeffs.len() as i64);
        let mut coeffs = vec![0i128; (high - low) as usize];
        for p in [self, other] {
            for (i, &c) in p.coeffs.iter().enumerate() {
                let slot = &mut coeffs[(p.low - low) as usize + i];
                *slot = slot.checked_add(c).ok_or_else(overflow)?;
            }
        }
        Ok(Poly { low, coeffs }.trimmed())
    }

    fn neg(&self) -> Poly {
        Poly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    fn mul(&self, other: &Poly) -> Res<Poly> {
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero());
        }
        let mut coeffs = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                let prod = a.checked_mul(b).ok_or_else(overflow)?;
                coeffs[i + j] = coeffs[i + j].checked_add(prod).ok_or_else(overflow)?;
            }
        }
        Ok(Poly { low: self.low + other.low, coeffs }.trimmed())
    }

    /// Exact division; fails if `d` does not divide `self` over the integers.
    fn div_exact(&self, d: &Poly) -> Res<Poly> {
        if d.is_zero() {
            return Err(ComputeError::InexactDivision("division by zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        let mut rem = self.coeffs.clone();
        let dl = d.coeffs.len();
        if rem.len() < dl {
            return Err(ComputeError::InexactDivision("degree too small".into()));
        }
        let lead = *d.coeffs.last().expect("nonzero");
        let mut quot = vec![0i128; rem.len() - dl + 1];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dl - 1];
            if top % lead != 0 {
                return Err(ComputeError::InexactDivision("non-integral quotient".into()));
            }
            let q = top / lead;
            quot[k] = q;
            for (j, &c) in d.coeffs.iter().enumerate() {
                let prod = q.checked_mul(c).ok_or_else(overflow)?;
                rem[k + j] = rem[k + j].checked_sub(prod).ok_or_else(overflow)?;
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return Err(ComputeError::InexactDivision("nonzero remainder".into()));
        }
        Ok(Poly { low: self.low - d.low, coeffs: quot }.trimmed())
    }

    fn to_laurent(&self) -> Res<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for (i, &c) in self.coeffs.iter().enumerate() {
            out.add_term(self.low + i as i64, i64::try_from(c).map_err(|_| overflow())?);
        }
        Ok(out)
    }
}

/// Determinant by Bareiss elimination with row pivoting.
fn determinant(mut m: Vec<Vec<Poly>>) -> Res<Poly> {
    let size = m.len();
    if size == 0 {
        return Ok(Poly::term(1, 0));
    }
    let mut prev = Poly::term(1, 0);
    let mut negate = false;
    for k in 0..size {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..size).find(|&i| !m[i][k].is_zero()) else {
                return Ok(Poly::zero());
            };
            m.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let a = m[k][k].mul(&m[i][j])?;
                let b = m[i][k].mul(&m[k][j])?;
                m[i][j] = a.add(&b.neg())?.div_exact(&prev)?;
            }
            m[i][k] = Poly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[size - 1][size - 1].clone();
    Ok(if negate { det.neg() } else { det })
}

/// Shifts to a symmetric exponent range and fixes the sign so `Δ(1) = 1`.
fn normalize(p: LaurentPoly) -> Result<LaurentPoly, ComputeError> {
    let (Some(lo), Some(hi)) = (p.min_exp(), p.max_exp()) else {
        return Err(ComputeError::Invalid("Alexander determinant vanished".into()));
    };
    if (lo + hi) % 2 != 0 {
        return Err(ComputeError::Invalid(format!("Alexander determinant {p} has no symmetric shift")));
    }
    let shifted = p.shift(-(lo + hi) / 2);
    let shifted = if shifted.at_one() < 0 { -&shifted } else { shifted };
    if shifted.at_one() != 1 || !shifted.is_symmetric() {
        return Err(ComputeError::Invalid(format!("Alexander determinant {shifted} is not a knot polynomial")));
    }
    Ok(shifted)
}

/// Symmetric, `Δ(1) = 1` normalized Alexander polynomial of a knot diagram.
pub fn alexander_polynomial(d: &PlanarDiagram) -> Result<LaurentPoly, ComputeError> {
    if d.components != 1 {
        return Err(ComputeError::LinkNotSupported(d.components));
    }
    let c = d.crossings.len();
    if c == 0 {
        return Ok(LaurentPoly::one());
    }
    let mut matrix = vec![vec![Poly::zero(); c]; c];
    for (row, x) in d.crossings.iter().enumerate() {
        // Relator x_over^e x_in x_over^-e x_out^-1 with e = sign.
        let e = x.sign as i64;
        let entries =
            [(x.over, Poly::term(1, 0).add(&Poly::term(-1, e))?), (x.under_in, Poly::term(1, e)), (x.under_out, Poly::term(-1, 0))];
        for (col, val) in entries {
            matrix[row][col] = matrix[row][col].add(&val)?;
        }
    }
    let minor: Vec<Vec<Poly>> = matrix[..c - 1].iter().map(|r| r[..c - 1].to_vec()).collect();
    normalize(determinant(minor)?.to_laurent()?)
}

/// Convenience: the Alexander polynomial of the knot drawn by a grid.
pub fn grid_alexander(g: &GridDiagram) -> Result<LaurentPoly, ComputeError> {
    alexander_polynomial(&planar_diagram(g))
}

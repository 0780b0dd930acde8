//! Dense exact tableau simplex over integer data.
//!
//! Two entry points share one tableau: [`maximize_packing`] runs primal
//! simplex from the all-slack basis (feasible because `b ≥ 0`), and
//! [`minimize_covering`] runs dual simplex from the all-slack basis (dual
//! feasible because `c ≥ 0`). Both use smallest-index pivoting rules, so
//! they terminate and the optimal vertex is a deterministic function of the
//! input.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Optimal vertex of an LP together with the optimal multipliers of its
/// constraints (read off the reduced costs of the slack columns).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Optimum {
    pub solution: Vec<Rational>,
    pub duals: Vec<Rational>,
    pub value: Rational,
}

/// Fraction-free tableau: the true entry at `(i, j)` is `rows[i][j] / den`,
/// and likewise for `rhs` and `cost`. Pivoting divides exactly by the
/// previous pivot, so no gcd work is ever done.
struct Tableau {
    rows: Vec<Vec<BigInt>>,
    rhs: Vec<BigInt>,
    /// Reduced costs of the minimization form (scaled by `den`).
    cost: Vec<BigInt>,
    den: BigInt,
    basis: Vec<usize>,
    structural: usize,
}

fn lcm_of_denominators<'a>(values: impl Iterator<Item = &'a Rational>) -> BigInt {
    values.fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

fn scaled(values: &[Rational], factor: &BigInt) -> Vec<BigInt> {
    values.iter().map(|v| (v * factor).to_integer()).collect()
}

/// Integer form of `A x (≤|≥) b` and `c`: each constraint row is multiplied by
/// the lcm of its denominators, the objective by the lcm of its own.
struct Scaled {
    a: Vec<Vec<BigInt>>,
    b: Vec<BigInt>,
    c: Vec<BigInt>,
    row_scale: Vec<BigInt>,
    cost_scale: BigInt,
}

impl Scaled {
    fn new(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> Self {
        let row_scale: Vec<BigInt> = a
            .iter()
            .zip(b)
            .map(|(row, rhs)| lcm_of_denominators(row.iter().chain(std::iter::once(rhs))))
            .collect();
        let cost_scale = lcm_of_denominators(c.iter());
        Self {
            a: a.iter().zip(&row_scale).map(|(row, k)| scaled(row, k)).collect(),
            b: b.iter().zip(&row_scale).map(|(v, k)| (v * k).to_integer()).collect(),
            c: scaled(c, &cost_scale),
            row_scale,
            cost_scale,
        }
    }

    /// Multipliers of the original rows from those of the scaled rows.
    fn unscale_duals(&self, duals: Vec<Rational>) -> Vec<Rational> {
        duals
            .into_iter()
            .zip(&self.row_scale)
            .map(|(y, k)| y * Rational::from_integer(k.clone()) / Rational::from_integer(self.cost_scale.clone()))
            .collect()
    }
}

impl Tableau {
    /// Rows are `sign·A | I` with right-hand side `rhs`, slack basis.
    fn new(a: Vec<Vec<BigInt>>, negate: bool, rhs: Vec<BigInt>, cost: Vec<BigInt>) -> Self {
        let m = a.len();
        let n = cost.len();
        let mut rows = Vec::with_capacity(m);
        for (i, mut full) in a.into_iter().enumerate() {
            if negate {
                full.iter_mut().for_each(|v| *v = -&*v);
            }
            full.extend((0..m).map(|k| if k == i { BigInt::one() } else { BigInt::zero() }));
            rows.push(full);
        }
        let mut cost = cost;
        cost.extend((0..m).map(|_| BigInt::zero()));
        Self {
            rows,
            rhs,
            cost,
            den: BigInt::one(),
            basis: (n..n + m).collect(),
            structural: n,
        }
    }

    fn sign(&self, v: &BigInt) -> Sign {
        match (v.sign(), self.den.sign()) {
            (Sign::NoSign, _) => Sign::NoSign,
            (a, b) if a == b => Sign::Plus,
            _ => Sign::Minus,
        }
    }

    fn value(&self, v: &BigInt) -> Rational {
        Rational::new(v.clone(), self.den.clone())
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let piv = self.rows[r][c].clone();
        let nonzero: Vec<usize> = (0..self.rows[r].len())
            .filter(|&j| !self.rows[r][j].is_zero())
            .collect();
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        let den = &self.den;
        let update = |row: &mut Vec<BigInt>, rhs: Option<&mut BigInt>| {
            let factor = row[c].clone();
            if factor.is_zero() {
                for v in row.iter_mut() {
                    if !v.is_zero() {
                        *v = &*v * &piv / den;
                    }
                }
                if let Some(rhs) = rhs {
                    *rhs = &*rhs * &piv / den;
                }
                return;
            }
            let mut touched = vec![false; row.len()];
            for &j in &nonzero {
                row[j] = (&row[j] * &piv - &factor * &prow[j]) / den;
                touched[j] = true;
            }
            for (j, v) in row.iter_mut().enumerate() {
                if !touched[j] && !v.is_zero() {
                    *v = &*v * &piv / den;
                }
            }
            if let Some(rhs) = rhs {
                *rhs = (&*rhs * &piv - &factor * &prhs) / den;
            }
        };
        for i in 0..self.rows.len() {
            if i != r {
                update(&mut self.rows[i], Some(&mut self.rhs[i]));
            }
        }
        update(&mut self.cost, None);
        self.den = piv;
        self.basis[r] = c;
    }

    fn primal_values(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.structural];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.structural {
                x[b] = self.value(&self.rhs[i]);
            }
        }
        x
    }

    fn slack_costs(&self) -> Vec<Rational> {
        self.cost[self.structural..].iter().map(|v| self.value(v)).collect()
    }
}

fn check_shape(a: &[Vec<Rational>], rows: usize, cols: usize) -> Result<()> {
    if a.len() != rows {
        return Err(Error::DimensionMismatch {
            expected: rows,
            found: a.len(),
        });
    }
    if let Some(bad) = a.iter().find(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch {
            expected: cols,
            found: bad.len(),
        });
    }
    Ok(())
}

/// `max c·x` subject to `A x ≤ b`, `x ≥ 0`, requiring `b ≥ 0`.
pub fn maximize_packing(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> Result<Optimum> {
    check_shape(a, b.len(), c.len())?;
    if b.iter().any(Signed::is_negative) {
        return Err(Error::Precondition("packing LP needs b >= 0".into()));
    }
    let data = Scaled::new(a, b, c);
    let cost = data.c.iter().map(|v| -v).collect();
    let mut t = Tableau::new(data.a.clone(), false, data.b.clone(), cost);
    while let Some(col) = t.cost.iter().position(|v| t.sign(v) == Sign::Minus) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..t.rows.len() {
            let coef = &t.rows[i][col];
            if t.sign(coef) != Sign::Plus {
                continue;
            }
            let ratio = Rational::new(t.rhs[i].clone(), coef.clone());
            let better = match &leave {
                None => true,
                Some((r, best)) => ratio < *best || (ratio == *best && t.basis[i] < t.basis[*r]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((row, _)) = leave else {
            return Err(Error::Internal("packing LP is unbounded".into()));
        };
        t.pivot(row, col);
    }
    let solution = t.primal_values();
    let value = solution.iter().zip(c).map(|(x, c)| x * c).sum();
    Ok(Optimum {
        duals: data.unscale_duals(t.slack_costs()),
        solution,
        value,
    })
}

/// `min c·y` subject to `A y ≥ b`, `y ≥ 0`, requiring `c ≥ 0`.
pub fn minimize_covering(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> Result<Optimum> {
    check_shape(a, b.len(), c.len())?;
    if c.iter().any(Signed::is_negative) {
        return Err(Error::Precondition("covering LP needs c >= 0".into()));
    }
    let data = Scaled::new(a, b, c);
    let rhs = data.b.iter().map(|v| -v).collect();
    let mut t = Tableau::new(data.a.clone(), true, rhs, data.c.clone());
    loop {
        let row = (0..t.rows.len())
            .filter(|&i| t.sign(&t.rhs[i]) == Sign::Minus)
            .min_by_key(|&i| t.basis[i]);
        let Some(row) = row else {
            break;
        };
        let mut enter: Option<(usize, Rational)> = None;
        for j in 0..t.cost.len() {
            let coef = &t.rows[row][j];
            if t.sign(coef) != Sign::Minus {
                continue;
            }
            let ratio = Rational::new(t.cost[j].clone(), -coef.clone());
            if enter.as_ref().is_none_or(|(_, best)| ratio < *best) {
                enter = Some((j, ratio));
            }
        }
        let Some((col, _)) = enter else {
            return Err(Error::Infeasible("covering LP"));
        };
        t.pivot(row, col);
    }
    let solution = t.primal_values();
    let value = solution.iter().zip(c).map(|(y, c)| y * c).sum();
    Ok(Optimum {
        duals: data.unscale_duals(t.slack_costs()),
        solution,
        value,
    })
}

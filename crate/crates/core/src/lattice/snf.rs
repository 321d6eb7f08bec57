//! Sparse Smith normal form by integer elimination.
//!
//! Unit pivots are taken first, cheapest Markowitz cost first, through a lazy
//! heap. When no unit remains, the smallest entry is used as pivot and
//! Euclidean row and column steps run until it divides its row and column.
//! The collected diagonal is then normalized into a divisibility chain.
//!
//! Entries start out as `i64` with checked arithmetic; on overflow the whole
//! elimination restarts over `BigInt`.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::SparseIntMatrix;
use super::modp::{rank_mod_p, SCREEN_PRIMES};
use crate::error::{KmError, Result};

/// Matrices above this many nonzeros get a mod-p rank screen.
pub const DEFAULT_SCREEN_THRESHOLD: usize = 200_000;

/// Progress callback: `(pivots done, upper bound on pivots)`. Returning
/// `false` cancels the computation.
pub type Monitor<'a> = &'a (dyn Fn(usize, usize) -> bool + Sync);

#[derive(Clone, Copy)]
pub struct SnfOptions<'a> {
    pub monitor: Option<Monitor<'a>>,
    pub screen_threshold: usize,
}

impl Default for SnfOptions<'_> {
    fn default() -> Self {
        SnfOptions { monitor: None, screen_threshold: DEFAULT_SCREEN_THRESHOLD }
    }
}

/// The nonzero diagonal of the Smith form, `d1 | d2 | ... | dr`, all positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Factors different from 1.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

pub fn smith_normal_form(m: &SparseIntMatrix) -> SmithForm {
    smith_normal_form_with(m, &SnfOptions::default()).expect("no monitor, cannot be cancelled")
}

pub fn smith_normal_form_with(m: &SparseIntMatrix, opts: &SnfOptions) -> Result<SmithForm> {
    let screen = if m.nnz() > opts.screen_threshold {
        let ranks: Vec<(u64, usize)> =
            SCREEN_PRIMES.iter().map(|&p| (p, rank_mod_p(m, p).expect("screen primes are prime"))).collect();
        log::info!("rank screen on {}x{} ({} nonzeros): {:?}", m.rows(), m.cols(), m.nnz(), ranks);
        Some(ranks)
    } else {
        None
    };

    let diag = match run(SmallRing, m, opts) {
        Ok(d) => d,
        Err(Stop::Overflow) => {
            log::debug!("i64 elimination overflowed, retrying with big integers");
            run(BigRing, m, opts).map_err(|e| match e {
                Stop::Overflow => unreachable!("big integers do not overflow"),
                Stop::Cancelled => KmError::Cancelled,
            })?
        }
        Err(Stop::Cancelled) => return Err(KmError::Cancelled),
    };
    let form = SmithForm { factors: normalize_diagonal(diag) };

    if let Some(ranks) = screen {
        for (p, r) in ranks {
            let pb = BigInt::from(p);
            let expect = form.factors.iter().filter(|d| !d.is_multiple_of(&pb)).count();
            if expect != r {
                return Err(KmError::Inconsistent(format!(
                    "rank mod {p} is {r} but the Smith form predicts {expect}"
                )));
            }
        }
    }
    Ok(form)
}

/// Turns a list of nonzero diagonal entries into the divisibility chain of the
/// same diagonal matrix.
pub fn normalize_diagonal(diag: Vec<BigInt>) -> Vec<BigInt> {
    let (ones, mut rest): (Vec<BigInt>, Vec<BigInt>) =
        diag.into_iter().map(|d| d.abs()).filter(|d| !d.is_zero()).partition(|d| d.is_one());
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            let g = rest[i].gcd(&rest[j]);
            if g == rest[i] {
                continue;
            }
            let l = &rest[i] / &g * &rest[j];
            rest[i] = g;
            rest[j] = l;
        }
    }
    // the pass leaves a chain, so any new 1s already sit at its front
    let mut out = ones;
    out.extend(rest);
    out
}

enum Stop {
    Overflow,
    Cancelled,
}

trait Ring: Copy {
    type E: Clone + std::fmt::Debug;
    fn lift(&self, v: &BigInt) -> Option<Self::E>;
    fn to_big(&self, v: &Self::E) -> BigInt;
    fn is_zero(&self, v: &Self::E) -> bool;
    fn is_unit(&self, v: &Self::E) -> bool;
    fn abs_cmp(&self, a: &Self::E, b: &Self::E) -> Ordering;
    /// `(q, r)` with `a = q b + r` and `|r| <= |b| / 2`.
    fn div_round(&self, a: &Self::E, b: &Self::E) -> Option<(Self::E, Self::E)>;
    /// `a - q b`
    fn mul_sub(&self, a: &Self::E, q: &Self::E, b: &Self::E) -> Option<Self::E>;
}

#[derive(Clone, Copy)]
struct SmallRing;

// Values are kept within +-2^62 so negation and abs never overflow.
const SMALL_LIMIT: i64 = 1 << 62;

impl Ring for SmallRing {
    type E = i64;
    fn lift(&self, v: &BigInt) -> Option<i64> {
        v.to_i64().filter(|x| x.abs() < SMALL_LIMIT)
    }
    fn to_big(&self, v: &i64) -> BigInt {
        BigInt::from(*v)
    }
    fn is_zero(&self, v: &i64) -> bool {
        *v == 0
    }
    fn is_unit(&self, v: &i64) -> bool {
        v.abs() == 1
    }
    fn abs_cmp(&self, a: &i64, b: &i64) -> Ordering {
        a.abs().cmp(&b.abs())
    }
    fn div_round(&self, a: &i64, b: &i64) -> Option<(i64, i64)> {
        let mut r = a.rem_euclid(*b);
        if 2 * r > b.abs() {
            r -= b.abs();
        }
        Some(((a - r) / b, r))
    }
    fn mul_sub(&self, a: &i64, q: &i64, b: &i64) -> Option<i64> {
        a.checked_sub(q.checked_mul(*b)?).filter(|x| x.abs() < SMALL_LIMIT)
    }
}

#[derive(Clone, Copy)]
struct BigRing;

impl Ring for BigRing {
    type E = BigInt;
    fn lift(&self, v: &BigInt) -> Option<BigInt> {
        Some(v.clone())
    }
    fn to_big(&self, v: &BigInt) -> BigInt {
        v.clone()
    }
    fn is_zero(&self, v: &BigInt) -> bool {
        v.is_zero()
    }
    fn is_unit(&self, v: &BigInt) -> bool {
        v.magnitude().is_one()
    }
    fn abs_cmp(&self, a: &BigInt, b: &BigInt) -> Ordering {
        a.magnitude().cmp(b.magnitude())
    }
    fn div_round(&self, a: &BigInt, b: &BigInt) -> Option<(BigInt, BigInt)> {
        let babs = b.abs();
        let mut r = a.mod_floor(&babs);
        if (&r << 1u32) > babs {
            r -= &babs;
        }
        Some(((a - &r) / b, r))
    }
    fn mul_sub(&self, a: &BigInt, q: &BigInt, b: &BigInt) -> Option<BigInt> {
        Some(a - q * b)
    }
}

type Row<E> = Vec<(u32, E)>;

struct Elim<'o, R: Ring> {
    ring: R,
    rows: Vec<Row<R::E>>,
    row_dead: Vec<bool>,
    /// Rows that may hold an entry in each column; stale members are pruned lazily.
    cols: Vec<Vec<u32>>,
    col_dead: Vec<bool>,
    heap: BinaryHeap<Reverse<(u64, u32, u32)>>,
    diag: Vec<BigInt>,
    opts: &'o SnfOptions<'o>,
}

fn run<R: Ring>(ring: R, m: &SparseIntMatrix, opts: &SnfOptions) -> std::result::Result<Vec<BigInt>, Stop> {
    let mut rows = Vec::with_capacity(m.rows());
    let mut cols = vec![Vec::new(); m.cols()];
    for i in 0..m.rows() {
        let mut row = Vec::with_capacity(m.row(i).len());
        for (j, v) in m.row(i) {
            row.push((*j as u32, ring.lift(v).ok_or(Stop::Overflow)?));
            cols[*j].push(i as u32);
        }
        rows.push(row);
    }
    let mut e = Elim {
        ring,
        row_dead: vec![false; rows.len()],
        rows,
        cols,
        col_dead: vec![false; m.cols()],
        heap: BinaryHeap::new(),
        diag: Vec::new(),
        opts,
    };
    for i in 0..e.rows.len() {
        for k in 0..e.rows[i].len() {
            let (c, ref v) = e.rows[i][k];
            if e.ring.is_unit(v) {
                let cost = e.cost(i, c as usize);
                e.heap.push(Reverse((cost, i as u32, c)));
            }
        }
    }
    e.eliminate()?;
    Ok(e.diag)
}

impl<R: Ring> Elim<'_, R> {
    fn entry(&self, i: usize, c: usize) -> Option<&R::E> {
        let row = &self.rows[i];
        row.binary_search_by_key(&(c as u32), |e| e.0).ok().map(|k| &row[k].1)
    }

    fn cost(&self, i: usize, c: usize) -> u64 {
        (self.rows[i].len() as u64 - 1) * (self.cols[c].len().max(1) as u64 - 1)
    }

    /// Prunes column `c` to the live rows holding an entry there.
    fn col_members(&mut self, c: usize) -> Vec<u32> {
        let mut list = std::mem::take(&mut self.cols[c]);
        list.sort_unstable();
        list.dedup();
        list.retain(|&i| !self.row_dead[i as usize] && self.entry(i as usize, c).is_some());
        self.cols[c] = list.clone();
        list
    }

    /// `row[i] -= q * row[p]`.
    fn row_axpy(&mut self, i: usize, q: &R::E, p: usize) -> std::result::Result<(), Stop> {
        let target = std::mem::take(&mut self.rows[i]);
        let src = &self.rows[p];
        let mut out = Vec::with_capacity(target.len() + src.len());
        let (mut a, mut b) = (0, 0);
        let ring = self.ring;
        while a < target.len() || b < src.len() {
            let ca = target.get(a).map_or(u32::MAX, |e| e.0);
            let cb = src.get(b).map_or(u32::MAX, |e| e.0);
            match ca.cmp(&cb) {
                Ordering::Less => {
                    out.push(target[a].clone());
                    a += 1;
                }
                Ordering::Equal => {
                    let v = ring.mul_sub(&target[a].1, q, &src[b].1).ok_or(Stop::Overflow)?;
                    if !ring.is_zero(&v) {
                        out.push((ca, v));
                    }
                    a += 1;
                    b += 1;
                }
                Ordering::Greater => {
                    let zero = ring.lift(&BigInt::zero()).expect("zero fits");
                    let v = ring.mul_sub(&zero, q, &src[b].1).ok_or(Stop::Overflow)?;
                    self.cols[cb as usize].push(i as u32);
                    out.push((cb, v));
                    b += 1;
                }
            }
        }
        self.rows[i] = out;
        // only entries in the source's columns changed
        for k in 0..self.rows[p].len() {
            let c = self.rows[p][k].0;
            if let Some(v) = self.entry(i, c as usize) {
                if ring.is_unit(v) {
                    let cost = self.cost(i, c as usize);
                    self.heap.push(Reverse((cost, i as u32, c)));
                }
            }
        }
        Ok(())
    }

    fn kill(&mut self, p: usize, c: usize) {
        self.row_dead[p] = true;
        self.rows[p] = Vec::new();
        self.col_dead[c] = true;
        self.cols[c] = Vec::new();
    }

    fn pop_unit(&mut self) -> Option<(usize, usize)> {
        while let Some(Reverse((cost, i, c))) = self.heap.pop() {
            let (i, c) = (i as usize, c as usize);
            if self.row_dead[i] || self.col_dead[c] {
                continue;
            }
            if !self.entry(i, c).is_some_and(|v| self.ring.is_unit(v)) {
                continue;
            }
            self.col_members(c);
            let now = self.cost(i, c);
            if now > cost {
                self.heap.push(Reverse((now, i as u32, c as u32)));
                continue;
            }
            return Some((i, c));
        }
        None
    }

    fn unit_pivot(&mut self, p: usize, c: usize) -> std::result::Result<(), Stop> {
        let u = self.entry(p, c).expect("pivot entry").clone();
        for i in self.col_members(c) {
            let i = i as usize;
            if i == p {
                continue;
            }
            let a = self.entry(i, c).expect("column member").clone();
            let (q, _) = self.ring.div_round(&a, &u).ok_or(Stop::Overflow)?;
            self.row_axpy(i, &q, p)?;
        }
        self.diag.push(BigInt::one());
        self.kill(p, c);
        Ok(())
    }

    fn general_pivot_choice(&mut self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut best_key: Option<(R::E, u64)> = None;
        for i in 0..self.rows.len() {
            if self.row_dead[i] {
                continue;
            }
            for (c, v) in &self.rows[i] {
                let c = *c as usize;
                let better = match &best_key {
                    None => true,
                    Some((bv, bcost)) => match self.ring.abs_cmp(v, bv) {
                        Ordering::Less => true,
                        Ordering::Greater => false,
                        Ordering::Equal => self.cost(i, c) < *bcost,
                    },
                };
                if better {
                    best_key = Some((v.clone(), self.cost(i, c)));
                    best = Some((i, c));
                }
            }
        }
        best
    }

    fn general_pivot(&mut self, mut p: usize, mut c: usize) -> std::result::Result<(), Stop> {
        loop {
            // clear column c below and above the pivot
            loop {
                let v = self.entry(p, c).expect("pivot entry").clone();
                let mut next: Option<(usize, R::E)> = None;
                for i in self.col_members(c) {
                    let i = i as usize;
                    if i == p {
                        continue;
                    }
                    let a = self.entry(i, c).expect("column member").clone();
                    let (q, r) = self.ring.div_round(&a, &v).ok_or(Stop::Overflow)?;
                    self.row_axpy(i, &q, p)?;
                    if !self.ring.is_zero(&r)
                        && next.as_ref().is_none_or(|(_, b)| self.ring.abs_cmp(&r, b) == Ordering::Less)
                    {
                        next = Some((i, r));
                    }
                }
                match next {
                    Some((i, _)) => p = i,
                    None => break,
                }
            }
            // column c now holds only the pivot; reduce the rest of row p by column steps
            let v = self.entry(p, c).expect("pivot entry").clone();
            let row = std::mem::take(&mut self.rows[p]);
            let mut out = Vec::with_capacity(row.len());
            let mut next: Option<(usize, R::E)> = None;
            for (j, a) in row {
                if j as usize == c {
                    out.push((j, a));
                    continue;
                }
                let (_, r) = self.ring.div_round(&a, &v).ok_or(Stop::Overflow)?;
                if self.ring.is_zero(&r) {
                    continue;
                }
                if next.as_ref().is_none_or(|(_, b)| self.ring.abs_cmp(&r, b) == Ordering::Less) {
                    next = Some((j as usize, r.clone()));
                }
                out.push((j, r));
            }
            self.rows[p] = out;
            match next {
                Some((j, _)) => c = j,
                None => {
                    self.diag.push(self.ring.to_big(&v));
                    self.kill(p, c);
                    return Ok(());
                }
            }
        }
    }

    fn eliminate(&mut self) -> std::result::Result<(), Stop> {
        let bound = self.rows.len().min(self.col_dead.len());
        loop {
            if let Some(mon) = self.opts.monitor {
                if self.diag.len().is_multiple_of(256) && !mon(self.diag.len(), bound) {
                    return Err(Stop::Cancelled);
                }
            }
            if let Some((p, c)) = self.pop_unit() {
                self.unit_pivot(p, c)?;
                continue;
            }
            match self.general_pivot_choice() {
                Some((p, c)) => self.general_pivot(p, c)?,
                None => return Ok(()),
            }
        }
    }
}

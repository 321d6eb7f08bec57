//! Characters of the symmetric group on the few representations the
//! homology decomposition needs, with a Murnaghan–Nakayama oracle.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{KmError, Result};

/// A weakly decreasing list of positive parts. Doubles as a cycle type and
/// as a Young diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(KmError::InvalidArgument("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts equal to `k`.
    pub fn count(&self, k: usize) -> usize {
        self.parts.iter().filter(|&&p| p == k).count()
    }

    pub fn identity(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = KmError;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts = inner
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse::<usize>().map_err(|_| KmError::Parse(format!("bad partition `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n`, reverse-lexicographic: `[n]` first, `[1^n]` last.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Size of the conjugacy class with this cycle type:
/// `n! / prod_k (k^{i_k} i_k!)`.
pub fn class_size(cycle_type: &Partition) -> BigInt {
    let mut denom = BigInt::one();
    let mut k = 0;
    while k < cycle_type.parts.len() {
        let len = cycle_type.parts[k];
        let m = cycle_type.count(len);
        denom *= BigInt::from(len).pow(m as u32) * factorial(m);
        k += m;
    }
    factorial(cycle_type.n()) / denom
}

/// Number of `k`-subsets fixed setwise by a permutation of this cycle type:
/// the ways to pick whole cycles with total length `k`.
pub fn chi_subsets(cycle_type: &Partition, k: usize) -> BigInt {
    let mut ways = vec![BigInt::zero(); k + 1];
    ways[0] = BigInt::one();
    for &len in &cycle_type.parts {
        for s in (len..=k).rev() {
            let add = ways[s - len].clone();
            ways[s] += add;
        }
    }
    std::mem::take(&mut ways[k])
}

/// Class function with one value per partition, in [`partitions`] order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFunction {
    pub n: usize,
    #[serde(with = "decimal")]
    pub values: Vec<BigInt>,
}

/// Big integers as decimal strings in serialized form.
mod decimal {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(ToString::to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|t| t.parse().map_err(D::Error::custom)).collect()
    }
}

impl ClassFunction {
    pub fn from_fn(n: usize, f: impl Fn(&Partition) -> BigInt) -> Self {
        ClassFunction { n, values: partitions(n).iter().map(f).collect() }
    }

    /// Permutation character of the action on `k`-subsets.
    pub fn subsets(n: usize, k: usize) -> Self {
        Self::from_fn(n, |c| chi_subsets(c, k))
    }

    pub fn irrep(n: usize, label: IrrepLabel) -> Self {
        Self::from_fn(n, |c| chi_irrep(label, c))
    }

    pub fn mn(diagram: &Partition) -> Self {
        Self::from_fn(diagram.n(), |c| chi_mn(diagram, c))
    }

    pub fn sum(&self, other: &ClassFunction) -> Result<ClassFunction> {
        if self.n != other.n {
            return Err(KmError::DimensionMismatch { expected: self.n, got: other.n });
        }
        Ok(ClassFunction { n: self.n, values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() })
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }
}

/// `(1/n!) sum_classes |C| f(C) g(C)`.
pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Result<BigRational> {
    if f.n != g.n || f.values.len() != g.values.len() {
        return Err(KmError::DimensionMismatch { expected: f.n, got: g.n });
    }
    let total: BigInt = partitions(f.n)
        .iter()
        .zip(f.values.iter().zip(&g.values))
        .map(|(c, (a, b))| class_size(c) * a * b)
        .sum();
    Ok(BigRational::new(total, factorial(f.n)))
}

/// The four irreducibles with closed-form characters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IrrepLabel {
    /// `[n]`
    Trivial,
    /// `[n-1,1]`
    Standard,
    /// `[n-2,2]`
    TwoRow2,
    /// `[n-3,3]`
    TwoRow3,
}

impl IrrepLabel {
    pub const ALL: [IrrepLabel; 4] =
        [IrrepLabel::Trivial, IrrepLabel::Standard, IrrepLabel::TwoRow2, IrrepLabel::TwoRow3];

    /// Young diagram at this `n`, when it is one.
    pub fn diagram(self, n: usize) -> Option<Partition> {
        let second = match self {
            IrrepLabel::Trivial => 0,
            IrrepLabel::Standard => 1,
            IrrepLabel::TwoRow2 => 2,
            IrrepLabel::TwoRow3 => 3,
        };
        if n < 2 * second {
            return None;
        }
        Partition::new([n - second, second].into_iter().filter(|&p| p > 0).collect()).ok()
    }

    pub fn name(self) -> &'static str {
        match self {
            IrrepLabel::Trivial => "[n]",
            IrrepLabel::Standard => "[n-1,1]",
            IrrepLabel::TwoRow2 => "[n-2,2]",
            IrrepLabel::TwoRow3 => "[n-3,3]",
        }
    }
}

impl FromStr for IrrepLabel {
    type Err = KmError;
    fn from_str(s: &str) -> Result<Self> {
        IrrepLabel::ALL
            .into_iter()
            .find(|l| l.name() == s.replace(' ', ""))
            .ok_or_else(|| KmError::Parse(format!("unknown irreducible `{s}`")))
    }
}

/// Closed-form characters in terms of `i_k`, the number of `k`-cycles.
/// The `[n-3,3]` formula is evaluated as is even when `n < 6`.
pub fn chi_irrep(label: IrrepLabel, cycle_type: &Partition) -> BigInt {
    let i1 = cycle_type.count(1);
    let (i2, i3) = (BigInt::from(cycle_type.count(2)), BigInt::from(cycle_type.count(3)));
    let one = BigInt::from(i1);
    match label {
        IrrepLabel::Trivial => BigInt::one(),
        IrrepLabel::Standard => one - 1,
        IrrepLabel::TwoRow2 => i2 + &one * (&one - 3) / 2,
        IrrepLabel::TwoRow3 => i3 + i2 * (one - 1) + binomial(i1, 3) - binomial(i1, 2),
    }
}

/// Keyed by (diagram, cycle type).
type MnMemo = HashMap<(Vec<usize>, Vec<usize>), BigInt>;

thread_local! {
    static MN_MEMO: RefCell<MnMemo> = RefCell::new(HashMap::new());
}

/// Irreducible character by the Murnaghan–Nakayama rule, removing rim hooks
/// as bead moves on the beta-set of the diagram.
pub fn chi_mn(diagram: &Partition, cycle_type: &Partition) -> BigInt {
    if diagram.n() != cycle_type.n() {
        return BigInt::zero();
    }
    mn(&diagram.parts, &cycle_type.parts)
}

fn mn(shape: &[usize], cycles: &[usize]) -> BigInt {
    let Some((&r, rest)) = cycles.split_first() else {
        return BigInt::one();
    };
    let key = (shape.to_vec(), cycles.to_vec());
    if let Some(v) = MN_MEMO.with(|m| m.borrow().get(&key).cloned()) {
        return v;
    }
    let len = shape.len();
    // beta numbers: distinct, decreasing
    let beta: Vec<usize> = shape.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
    let mut total = BigInt::zero();
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let height = beta.iter().filter(|&&x| x > b - r && x < b).count();
        let mut nb = beta.clone();
        nb[i] = b - r;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let m = nb.len();
        let new_shape: Vec<usize> =
            nb.iter().enumerate().map(|(j, &x)| x - (m - 1 - j)).filter(|&p| p > 0).collect();
        let v = mn(&new_shape, rest);
        if height % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    MN_MEMO.with(|m| m.borrow_mut().insert(key, total.clone()));
    total
}

/// Dimension by the hook length formula.
pub fn hook_dim(diagram: &Partition) -> BigInt {
    let parts = &diagram.parts;
    let mut prod = BigInt::one();
    for (i, &row) in parts.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = parts[i + 1..].iter().filter(|&&p| p > j).count();
            prod *= arm + leg + 1;
        }
    }
    factorial(diagram.n()) / prod
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn count_partitions(n: usize) -> usize {
        // p(n) via the recurrence over the largest allowed part
        let mut ways = vec![0usize; n + 1];
        ways[0] = 1;
        for k in 1..=n {
            for s in k..=n {
                ways[s] += ways[s - k];
            }
        }
        ways[n]
    }

    #[test]
    fn partition_counts_and_order() {
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(partitions(5).len(), 7);
        assert_eq!(partitions(10).len(), 42);
        for n in 1..=15 {
            assert_eq!(partitions(n).len(), count_partitions(n));
        }
        let p4: Vec<String> = partitions(4).iter().map(ToString::to_string).collect();
        assert_eq!(p4, vec!["[4]", "[3,1]", "[2,2]", "[2,1,1]", "[1,1,1,1]"]);
    }

    #[test]
    fn class_sizes() {
        assert_eq!(class_size(&Partition::identity(6)), BigInt::one());
        assert_eq!(class_size(&part("[7]")), factorial(6));
        assert_eq!(class_size(&part("[3,2,1,1,1]")), BigInt::from(1120));
        for n in 1..=9 {
            let total: BigInt = partitions(n).iter().map(class_size).sum();
            assert_eq!(total, factorial(n));
        }
    }

    /// Counts permutations of `n` points by cycle type.
    fn brute_class_sizes(n: usize) -> HashMap<Partition, usize> {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let mut out = HashMap::new();
        for p in perms(n) {
            let mut seen = vec![false; n];
            let mut cycles = Vec::new();
            for s in 0..n {
                if !seen[s] {
                    let mut len = 0;
                    let mut x = s;
                    while !seen[x] {
                        seen[x] = true;
                        x = p[x];
                        len += 1;
                    }
                    cycles.push(len);
                }
            }
            *out.entry(Partition::new(cycles).unwrap()).or_insert(0) += 1;
        }
        out
    }

    #[test]
    fn class_sizes_match_enumeration() {
        for n in 1..=6 {
            let brute = brute_class_sizes(n);
            for c in partitions(n) {
                assert_eq!(class_size(&c), BigInt::from(brute[&c]), "{c}");
            }
        }
    }

    #[test]
    fn fixed_subsets() {
        let c = part("[3,2,1,1,1]");
        assert_eq!(chi_subsets(&c, 2), BigInt::from(4));
        assert_eq!(chi_subsets(&c, 3), BigInt::from(5));
        assert_eq!(chi_subsets(&Partition::identity(7), 3), BigInt::from(35));
        for n in 4..=9 {
            for c in partitions(n) {
                let (i1, i2, i3) = (c.count(1), c.count(2), c.count(3));
                assert_eq!(chi_subsets(&c, 2), BigInt::from(i2) + binomial(i1, 2));
                assert_eq!(chi_subsets(&c, 3), BigInt::from(i3 + i1 * i2) + binomial(i1, 3));
            }
        }
    }

    #[test]
    fn closed_forms_agree_with_mn() {
        for n in 5..=9 {
            for label in IrrepLabel::ALL {
                let Some(d) = label.diagram(n) else {
                    assert!(ClassFunction::irrep(n, label).is_zero());
                    continue;
                };
                assert_eq!(ClassFunction::irrep(n, label), ClassFunction::mn(&d), "{} n={n}", label.name());
            }
        }
        assert_eq!(chi_irrep(IrrepLabel::Standard, &part("[2,1,1,1]")), BigInt::from(2));
    }

    #[test]
    fn mn_basics() {
        for c in partitions(6) {
            assert_eq!(chi_mn(&part("[6]"), &c), BigInt::one());
        }
        for n in 1..=8 {
            for d in partitions(n) {
                assert_eq!(chi_mn(&d, &Partition::identity(n)), hook_dim(&d), "{d}");
                let f = ClassFunction::mn(&d);
                assert_eq!(inner_product(&f, &f).unwrap(), BigRational::one());
            }
        }
    }

    #[test]
    fn hook_dims() {
        assert_eq!(hook_dim(&part("[4,1]")), BigInt::from(4));
        assert_eq!(hook_dim(&part("[3,2]")), BigInt::from(5));
        assert_eq!(hook_dim(&part("[3,3]")), BigInt::from(5));
        assert_eq!(hook_dim(&part("[3,2,1]")), BigInt::from(16));
    }

    #[test]
    fn inner_products() {
        for n in 4..=8 {
            let triv = ClassFunction::irrep(n, IrrepLabel::Trivial);
            assert_eq!(inner_product(&triv, &triv).unwrap(), BigRational::one());
            let c2 = ClassFunction::subsets(n, 2);
            assert_eq!(inner_product(&c2, &c2).unwrap(), BigRational::from_integer(3.into()));
        }
        for n in 6..=9 {
            let c3 = ClassFunction::subsets(n, 3);
            let top = ClassFunction::irrep(n, IrrepLabel::TwoRow3);
            assert_eq!(inner_product(&c3, &top).unwrap(), BigRational::one());
        }
        assert!(inner_product(&ClassFunction::subsets(4, 2), &ClassFunction::subsets(5, 2)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = ClassFunction::irrep(6, IrrepLabel::TwoRow2);
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(serde_json::from_str::<ClassFunction>(&text).unwrap(), f);
    }
}

//! Partitions, dominance order, and symmetric polynomials in a fixed number
//! of variables, stored in the monomial basis.
//!
//! `SymPoly` is symmetric by construction: a raw multiset of exponent
//! vectors is validated for closure under coordinate permutations before
//! being compressed down to partition keys. Schur polynomials are built
//! directly from semistandard Young tableaux, which keeps them independent
//! of every other computation in the crate and lets them serve as oracles.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// A partition: weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&p| p > 0),
            "partition parts must be weakly decreasing and positive: {parts:?}"
        );
        Partition(parts)
    }

    /// Sorts a weak composition into a partition, dropping zero parts.
    pub fn from_composition(parts: &[usize]) -> Self {
        let mut v: Vec<usize> = parts.iter().copied().filter(|&p| p > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// All partitions of `n`.
    pub fn all_of(n: usize) -> Vec<Partition> {
        fn rec(left: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if left == 0 {
                out.push(Partition(prefix.clone()));
                return;
            }
            for p in (1..=left.min(max)).rev() {
                prefix.push(p);
                rec(left - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions of `n` with at most `max_len` parts.
    pub fn all_of_bounded(n: usize, max_len: usize) -> Vec<Partition> {
        Partition::all_of(n)
            .into_iter()
            .filter(|p| p.len() <= max_len)
            .collect()
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", strs.join(","))
    }
}

/// Dominance order: `lambda` ⊴ `mu` iff every prefix sum of `lambda` is at
/// most the corresponding prefix sum of `mu`. Requires equal sizes.
pub fn dominance_leq(lambda: &Partition, mu: &Partition) -> Result<bool> {
    if lambda.size() != mu.size() {
        return Err(Error::UnequalSizes(lambda.size(), mu.size()));
    }
    let k = lambda.len().max(mu.len());
    let (mut sl, mut sm) = (0usize, 0usize);
    for i in 0..k {
        sl += lambda.part(i);
        sm += mu.part(i);
        if sl > sm {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A symmetric polynomial in `n_vars` variables, stored as monomial-basis
/// coefficients keyed by partition. No zero coefficients are kept.
#[derive(Clone, PartialEq, Eq)]
pub struct SymPoly {
    n_vars: usize,
    coeffs: std::collections::BTreeMap<Partition, i64>,
}

impl SymPoly {
    pub fn zero(n_vars: usize) -> Self {
        SymPoly { n_vars, coeffs: Default::default() }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, lambda: &Partition) -> i64 {
        self.coeffs.get(lambda).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&Partition, i64)> {
        self.coeffs.iter().map(|(p, &c)| (p, c))
    }

    /// Builds a polynomial from monomial-basis data that is already known to
    /// be keyed by partitions (no symmetry question arises).
    pub fn from_partition_coeffs(
        n_vars: usize,
        coeffs: impl IntoIterator<Item = (Partition, i64)>,
    ) -> Result<Self> {
        let mut map = std::collections::BTreeMap::new();
        for (p, c) in coeffs {
            if p.len() > n_vars {
                return Err(Error::LengthExceedsVars { len: p.len(), n_vars });
            }
            if c != 0 {
                let e = map.entry(p).or_insert(0i64);
                *e = e.checked_add(c).expect("coefficient overflow");
            }
        }
        map.retain(|_, c| *c != 0);
        Ok(SymPoly { n_vars, coeffs: map })
    }

    /// Validates a multiset of raw exponent vectors for closure under
    /// coordinate permutation and compresses it to partition keys.
    ///
    /// Each vector is padded with zeros to `n_vars` entries; every
    /// rearrangement of a vector must occur with the same multiplicity,
    /// otherwise the offending orbit is reported.
    pub fn from_monomial_counts(
        n_vars: usize,
        counts: &HashMap<Vec<usize>, i64>,
    ) -> Result<Self> {
        // Group the observed vectors by their sorted key.
        let mut orbits: HashMap<Partition, Vec<(&Vec<usize>, i64)>> = HashMap::new();
        for (vec, &count) in counts {
            if count == 0 {
                continue;
            }
            if vec.len() > n_vars && vec[n_vars..].iter().any(|&e| e > 0) {
                return Err(Error::LengthExceedsVars { len: vec.len(), n_vars });
            }
            orbits
                .entry(Partition::from_composition(vec))
                .or_default()
                .push((vec, count));
        }
        let mut out = std::collections::BTreeMap::new();
        for (lambda, members) in orbits {
            if lambda.len() > n_vars {
                return Err(Error::LengthExceedsVars { len: lambda.len(), n_vars });
            }
            let expected_orbit = orbit_size(&lambda, n_vars);
            let common = members[0].1;
            if members.len() != expected_orbit as usize
                || members.iter().any(|&(_, c)| c != common)
            {
                return Err(Error::AsymmetricInput { witness: members[0].0.clone() });
            }
            out.insert(lambda, common);
        }
        Ok(SymPoly { n_vars, coeffs: out })
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        assert_eq!(self.n_vars, other.n_vars, "variable counts differ");
        let mut coeffs = self.coeffs.clone();
        for (p, &c) in &other.coeffs {
            let e = coeffs.entry(p.clone()).or_insert(0);
            *e = e.checked_add(c).expect("coefficient overflow");
        }
        coeffs.retain(|_, c| *c != 0);
        SymPoly { n_vars: self.n_vars, coeffs }
    }

    pub fn sub(&self, other: &SymPoly) -> SymPoly {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> SymPoly {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|&(_, &c)| c != 0 && k != 0)
            .map(|(p, &c)| (p.clone(), c.checked_mul(k).expect("coefficient overflow")))
            .collect();
        SymPoly { n_vars: self.n_vars, coeffs }
    }

    /// Value at `x_1 = x_2 = ... = 1`, i.e. the number of monomials counted
    /// with multiplicity.
    pub fn eval_ones(&self) -> i64 {
        self.coeffs
            .iter()
            .map(|(p, &c)| c.checked_mul(orbit_size(p, self.n_vars)).expect("overflow"))
            .fold(0i64, |acc, v| acc.checked_add(v).expect("overflow"))
    }

    /// True if every monomial has the same total degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.coeffs.keys().map(|p| p.size());
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", basis_combo_string("m", &self.coeffs))
    }
}

impl fmt::Debug for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymPoly({} vars; {})", self.n_vars, self)
    }
}

/// Number of distinct rearrangements of `lambda` padded with zeros to
/// `n_vars` coordinates: `n_vars! / (prod of multiplicity factorials)`.
fn orbit_size(lambda: &Partition, n_vars: usize) -> i64 {
    assert!(lambda.len() <= n_vars);
    fn factorial(n: usize) -> u128 {
        (1..=n as u128).product()
    }
    let mut denom = factorial(n_vars - lambda.len()); // zeros
    let mut run = 1;
    for i in 1..lambda.len() {
        if lambda.parts()[i] == lambda.parts()[i - 1] {
            run += 1;
        } else {
            denom *= factorial(run);
            run = 1;
        }
    }
    if !lambda.is_empty() {
        denom *= factorial(run);
    }
    let size = factorial(n_vars) / denom;
    i64::try_from(size).expect("orbit size overflow")
}

/// Renders a `Partition -> coefficient` map as a combination in the given
/// basis, e.g. `s[2,2] + s[2,1,1]` with keys in decreasing order.
pub fn basis_combo_string(basis: &str, coeffs: &std::collections::BTreeMap<Partition, i64>) -> String {
    if coeffs.is_empty() {
        return "0".to_string();
    }
    let mut keys: Vec<&Partition> = coeffs.keys().collect();
    keys.sort_by(|a, b| b.cmp(a));
    let mut out = String::new();
    for (i, key) in keys.iter().enumerate() {
        let c = coeffs[*key];
        if i == 0 {
            if c < 0 {
                out.push_str("-");
            }
        } else if c < 0 {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let a = c.abs();
        if a != 1 {
            out.push_str(&format!("{a}*"));
        }
        out.push_str(&format!("{basis}{key}"));
    }
    out
}

/// The Schur polynomial `s_lambda(x_1..x_N)`, computed as the generating
/// function of semistandard Young tableaux of shape `lambda` with entries
/// at most `N`.
pub fn schur(lambda: &Partition, n_vars: usize) -> Result<SymPoly> {
    if lambda.len() > n_vars {
        return Err(Error::LengthExceedsVars { len: lambda.len(), n_vars });
    }
    let mut counts: HashMap<Vec<usize>, i64> = HashMap::new();
    for_each_ssyt(lambda, n_vars, &mut |content| {
        *counts.entry(content.to_vec()).or_insert(0) += 1;
    });
    if lambda.is_empty() {
        counts.insert(vec![0; n_vars], 1);
    }
    SymPoly::from_monomial_counts(n_vars, &counts)
}

/// Number of semistandard Young tableaux of shape `lambda` with entries at
/// most `n_vars`, counted by direct enumeration.
pub fn ssyt_count(lambda: &Partition, n_vars: usize) -> u64 {
    let mut count = 0u64;
    for_each_ssyt(lambda, n_vars, &mut |_| count += 1);
    if lambda.is_empty() {
        count = 1;
    }
    count
}

/// Enumerates semistandard Young tableaux of the given shape with entries in
/// `1..=n_vars`, invoking `visit` with the content vector of each.
fn for_each_ssyt(lambda: &Partition, n_vars: usize, visit: &mut dyn FnMut(&[usize])) {
    if lambda.is_empty() {
        return;
    }
    let rows = lambda.len();
    let shape: Vec<usize> = lambda.parts().to_vec();
    let mut tab: Vec<Vec<usize>> = shape.iter().map(|&w| vec![0; w]).collect();
    let mut content = vec![0usize; n_vars];

    fn place(
        tab: &mut Vec<Vec<usize>>,
        shape: &[usize],
        rows: usize,
        n_vars: usize,
        r: usize,
        c: usize,
        content: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if r == rows {
            visit(content);
            return;
        }
        let (nr, nc) = if c + 1 < shape[r] { (r, c + 1) } else { (r + 1, 0) };
        let min = {
            let mut m = 1;
            if c > 0 {
                m = m.max(tab[r][c - 1]); // weakly increasing along rows
            }
            if r > 0 {
                m = m.max(tab[r - 1][c] + 1); // strictly increasing down columns
            }
            m
        };
        for v in min..=n_vars {
            tab[r][c] = v;
            content[v - 1] += 1;
            place(tab, shape, rows, n_vars, nr, nc, content, visit);
            content[v - 1] -= 1;
        }
    }

    place(&mut tab, &shape, rows, n_vars, 0, 0, &mut content, visit);
}

/// Expands a homogeneous symmetric polynomial in the Schur basis by
/// triangular elimination: repeatedly pick a dominance-maximal partition
/// with nonzero coefficient (lexicographically greatest among incomparable
/// maxima) and subtract that multiple of the corresponding Schur polynomial.
///
/// The result may contain negative coefficients for general input.
pub fn schur_expand(f: &SymPoly) -> Result<std::collections::BTreeMap<Partition, i64>> {
    if !f.is_homogeneous() {
        return Err(Error::NonHomogeneous);
    }
    let mut work = f.clone();
    let mut out = std::collections::BTreeMap::new();
    while !work.is_zero() {
        let keys: Vec<Partition> = work.coeffs.keys().cloned().collect();
        let mut maxima: Vec<&Partition> = Vec::new();
        'outer: for k in &keys {
            for other in &keys {
                if other != k && dominance_leq(k, other)? {
                    continue 'outer;
                }
            }
            maxima.push(k);
        }
        let lambda = (*maxima
            .iter()
            .max_by(|a, b| a.parts().cmp(b.parts()))
            .expect("nonzero polynomial has a maximal key"))
        .clone();
        let c = work.coeff(&lambda);
        debug_assert_ne!(c, 0);
        out.insert(lambda.clone(), c);
        work = work.sub(&schur(&lambda, f.n_vars())?.scale(c));
        assert_eq!(
            work.coeff(&lambda),
            0,
            "triangular elimination failed to clear the leading key"
        );
    }
    Ok(out)
}

/// A polynomial graded by a power of `q`, each coefficient a symmetric
/// polynomial in the same variables. Zero slices are not stored.
#[derive(Clone, PartialEq, Eq)]
pub struct QSymPoly {
    n_vars: usize,
    terms: std::collections::BTreeMap<usize, SymPoly>,
}

impl QSymPoly {
    pub fn zero(n_vars: usize) -> Self {
        QSymPoly { n_vars, terms: Default::default() }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn from_terms(
        n_vars: usize,
        terms: impl IntoIterator<Item = (usize, SymPoly)>,
    ) -> Self {
        let mut map = std::collections::BTreeMap::new();
        for (q, poly) in terms {
            assert_eq!(poly.n_vars(), n_vars, "variable counts differ");
            if !poly.is_zero() {
                let slot = map.entry(q).or_insert_with(|| SymPoly::zero(n_vars));
                *slot = slot.add(&poly);
            }
        }
        map.retain(|_, p: &mut SymPoly| !p.is_zero());
        QSymPoly { n_vars, terms: map }
    }

    pub fn term(&self, q: usize) -> Option<&SymPoly> {
        self.terms.get(&q)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &SymPoly)> {
        self.terms.iter().map(|(&q, p)| (q, p))
    }

    /// Specialization `q = 1`: the plain sum of all slices.
    pub fn at_q_one(&self) -> SymPoly {
        self.terms
            .values()
            .fold(SymPoly::zero(self.n_vars), |acc, p| acc.add(p))
    }
}

impl fmt::Display for QSymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(q, p)| match q {
                0 => format!("({p})"),
                1 => format!("q*({p})"),
                _ => format!("q^{q}*({p})"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for QSymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSymPoly({} vars; {})", self.n_vars, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn dominance_chain() {
        assert!(dominance_leq(&p(&[1, 1, 1]), &p(&[2, 1])).unwrap());
        assert!(dominance_leq(&p(&[2, 1]), &p(&[3])).unwrap());
        assert!(dominance_leq(&p(&[2, 2]), &p(&[3, 1])).unwrap());
        assert!(!dominance_leq(&p(&[3, 1]), &p(&[2, 2])).unwrap());
    }

    #[test]
    fn dominance_incomparable_pair() {
        // prefix sums 3,4,5,6 vs 2,4,6
        assert!(!dominance_leq(&p(&[3, 1, 1, 1]), &p(&[2, 2, 2])).unwrap());
        assert!(!dominance_leq(&p(&[2, 2, 2]), &p(&[3, 1, 1, 1])).unwrap());
    }

    #[test]
    fn dominance_unequal_sizes() {
        assert!(matches!(
            dominance_leq(&p(&[2]), &p(&[2, 1])),
            Err(Error::UnequalSizes(2, 3))
        ));
    }

    #[test]
    fn schur_single_box() {
        let s = schur(&p(&[1]), 2).unwrap();
        assert_eq!(s.coeff(&p(&[1])), 1);
        assert_eq!(s.eval_ones(), 2); // x1 + x2
    }

    #[test]
    fn schur_21_kostka() {
        // K_{(2,1),(1,1,1)} = 2: two SSYT of shape (2,1) and content (1,1,1).
        let s = schur(&p(&[2, 1]), 3).unwrap();
        assert_eq!(s.coeff(&p(&[1, 1, 1])), 2);
        assert_eq!(s.coeff(&p(&[2, 1])), 1);
        assert_eq!(s.coeff(&p(&[3])), 0);
    }

    #[test]
    fn schur_22_dimension() {
        let s = schur(&p(&[2, 2]), 4).unwrap();
        assert_eq!(s.eval_ones(), 20);
        assert_eq!(ssyt_count(&p(&[2, 2]), 4), 20);
    }

    #[test]
    fn schur_triangular_leading_term() {
        for lambda in Partition::all_of(5) {
            if lambda.len() > 4 {
                continue;
            }
            let s = schur(&lambda, 4).unwrap();
            assert_eq!(s.coeff(&lambda), 1);
            for (mu, _) in s.coeffs() {
                assert!(dominance_leq(mu, &lambda).unwrap());
            }
        }
    }

    #[test]
    fn expand_schur_is_identity() {
        for lambda in Partition::all_of(6) {
            if lambda.len() > 3 {
                continue;
            }
            let s = schur(&lambda, 3).unwrap();
            let exp = schur_expand(&s).unwrap();
            assert_eq!(exp.len(), 1);
            assert_eq!(exp[&lambda], 1);
        }
    }

    #[test]
    fn expand_square_of_power_sum() {
        // (x1+...+xN)^2 = s_(2) + s_(1,1)
        let n = 3;
        let mut counts: HashMap<Vec<usize>, i64> = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                let mut v = vec![0usize; n];
                v[i] += 1;
                v[j] += 1;
                *counts.entry(v).or_insert(0) += 1;
            }
        }
        let f = SymPoly::from_monomial_counts(n, &counts).unwrap();
        let exp = schur_expand(&f).unwrap();
        assert_eq!(exp.len(), 2);
        assert_eq!(exp[&p(&[2])], 1);
        assert_eq!(exp[&p(&[1, 1])], 1);
    }

    #[test]
    fn expand_random_combination_round_trip() {
        // Round-trip through schur_expand on a fixed linear combination.
        let n = 3;
        let combo = [(p(&[3, 1]), 2i64), (p(&[2, 2]), -1), (p(&[2, 1, 1]), 3)];
        let mut f = SymPoly::zero(n);
        for (lambda, c) in &combo {
            f = f.add(&schur(lambda, n).unwrap().scale(*c));
        }
        let exp = schur_expand(&f).unwrap();
        assert_eq!(exp.len(), combo.len());
        for (lambda, c) in &combo {
            assert_eq!(exp[lambda], *c);
        }
    }

    #[test]
    fn asymmetric_input_rejected() {
        let mut counts: HashMap<Vec<usize>, i64> = HashMap::new();
        counts.insert(vec![2, 0], 1);
        counts.insert(vec![1, 1], 1);
        // (0,2) missing
        assert!(matches!(
            SymPoly::from_monomial_counts(2, &counts),
            Err(Error::AsymmetricInput { .. })
        ));
    }

    #[test]
    fn symmetric_input_accepted() {
        let mut counts: HashMap<Vec<usize>, i64> = HashMap::new();
        counts.insert(vec![1, 0], 1);
        counts.insert(vec![0, 1], 1);
        let f = SymPoly::from_monomial_counts(2, &counts).unwrap();
        assert_eq!(f.coeff(&p(&[1])), 1);
        assert_eq!(format!("{f}"), "m[1]");
    }

    #[test]
    fn nonhomogeneous_rejected() {
        let f = SymPoly::from_partition_coeffs(3, [(p(&[1]), 1), (p(&[2]), 1)]).unwrap();
        assert!(matches!(schur_expand(&f), Err(Error::NonHomogeneous)));
    }

    #[test]
    fn schur_combo_rendering() {
        let mut map = std::collections::BTreeMap::new();
        map.insert(p(&[2, 2]), 1);
        map.insert(p(&[2, 1, 1]), 1);
        assert_eq!(basis_combo_string("s", &map), "s[2,2] + s[2,1,1]");
    }

    #[test]
    fn qsym_q_one_specialization() {
        let s = schur(&p(&[1, 1]), 2).unwrap();
        let q = QSymPoly::from_terms(2, [(0, s.clone()), (1, s.clone())]);
        assert_eq!(q.at_q_one(), s.scale(2));
        assert_eq!(format!("{q}"), "(m[1,1]) + q*(m[1,1])");
    }
}

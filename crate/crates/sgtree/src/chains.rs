//! Infinite-chain analysis.
//!
//! An infinite chain is a sequence of semigroups in which each is the parent
//! of the next; a semigroup lies in one exactly when it has infinitely many
//! descendants. For a non-ordinary semigroup everything is governed by the
//! gcd `d` of its nonzero left elements: it lies in a chain iff `d != 1`,
//! in infinitely many iff `d` is composite, and for prime `d` the chains
//! through it are counted by the bounded descendant search below.

use crate::error::Error;
use crate::semigroup::{gcd_all, NumericalSemigroup};
use crate::tree;

/// Seed `(factor, base)` naming one non-ordinary infinite chain: the chain
/// elements are `factor * base` completed with every integer from `j` up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSeed {
    factor: u64,
    base: NumericalSemigroup,
}

impl ChainSeed {
    pub fn new(factor: u64, base: NumericalSemigroup) -> Result<Self, Error> {
        if factor < 2 {
            return Err(Error::RangeError("chain seed factor must be at least 2".into()));
        }
        Ok(ChainSeed { factor, base })
    }

    pub fn factor(&self) -> u64 {
        self.factor
    }

    pub fn base(&self) -> &NumericalSemigroup {
        &self.base
    }
}

/// How many infinite chains pass through a semigroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainCount {
    Finite(u64),
    Infinite,
}

/// gcd of the nonzero left elements. Undefined (error) for ordinary
/// semigroups, which have no nonzero left elements.
pub fn left_gcd(s: &NumericalSemigroup) -> Result<u64, Error> {
    if s.is_ordinary() {
        return Err(Error::OrdinaryInput);
    }
    Ok(gcd_all(&s.nonzero_left_elements()))
}

/// Whether the semigroup lies in an infinite chain. Ordinary semigroups
/// always do; a non-ordinary one does iff its left gcd is not 1.
pub fn in_infinite_chain(s: &NumericalSemigroup) -> bool {
    match left_gcd(s) {
        Err(_) => true,
        Ok(d) => d != 1,
    }
}

/// For a non-ordinary semigroup with coprime left elements, the descendant
/// of largest genus: the semigroup generated by the nonzero left elements.
pub fn max_descendant(s: &NumericalSemigroup) -> Result<NumericalSemigroup, Error> {
    if s.is_ordinary() {
        return Err(Error::NotApplicable);
    }
    let left = s.nonzero_left_elements();
    if gcd_all(&left) != 1 {
        return Err(Error::NotApplicable);
    }
    NumericalSemigroup::from_generators(&left)
}

/// Divides the left elements by `d` and completes from `ceil(c / d)` up.
/// Requires `d >= 2` dividing every nonzero left element.
pub fn scale_down(s: &NumericalSemigroup, d: u64) -> Result<NumericalSemigroup, Error> {
    if s.is_ordinary() {
        return Err(Error::OrdinaryInput);
    }
    if d < 2 {
        return Err(Error::RangeError("scale divisor must be at least 2".into()));
    }
    let left = s.nonzero_left_elements();
    if left.iter().any(|&x| x % d != 0) {
        return Err(Error::InvalidDivisor { d });
    }
    let tail = s.conductor().div_ceil(d);
    let scaled: Vec<u64> = left.iter().map(|&x| x / d).collect();
    let gaps: Vec<u64> = (1..tail).filter(|x| !scaled.contains(x)).collect();
    NumericalSemigroup::from_gaps(gaps)
}

/// All descendants of `s` containing every member of `s` up to `x`.
///
/// Such a descendant keeps the left elements and the members up to `x`, so
/// it contains the semigroup they generate; the search therefore terminates
/// exactly when that mandatory set is coprime.
pub fn descendants_beyond(
    s: &NumericalSemigroup,
    x: u64,
) -> Result<Vec<NumericalSemigroup>, Error> {
    if !s.contains(x) {
        return Err(Error::RangeError(format!("{x} is not a member")));
    }
    let mut mandatory: Vec<u64> = s
        .members_below(x + 1)
        .into_iter()
        .filter(|&v| v != 0)
        .collect();
    for l in s.nonzero_left_elements() {
        if !mandatory.contains(&l) {
            mandatory.push(l);
        }
    }
    let g = gcd_all(&mandatory);
    if g != 1 {
        return Err(Error::Unbounded { gcd: g });
    }
    debug_assert!(NumericalSemigroup::from_generators(&mandatory).is_ok());
    let mut out = Vec::new();
    let mut stack = vec![s.clone()];
    while let Some(node) = stack.pop() {
        for (e, ch) in tree::children_with_generators(&node) {
            if e > x {
                out.push(ch.clone());
                stack.push(ch);
            }
        }
    }
    Ok(out)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Number of infinite chains through `s`.
///
/// Ordinary semigroups lie in infinitely many. Otherwise, with `d` the left
/// gcd: `d = 1` is an error (no chain at all), composite `d` gives
/// infinitely many, and prime `d` gives one plus the number of descendants
/// of the scaled-down semigroup beyond its largest scaled left element.
pub fn count_infinite_chains(s: &NumericalSemigroup) -> Result<ChainCount, Error> {
    if s.is_ordinary() {
        return Ok(ChainCount::Infinite);
    }
    let d = left_gcd(s)?;
    if d == 1 {
        return Err(Error::NotInChain);
    }
    if !is_prime(d) {
        return Ok(ChainCount::Infinite);
    }
    let scaled = scale_down(s, d)?;
    let x = s
        .nonzero_left_elements()
        .last()
        .copied()
        .expect("non-ordinary semigroup has a nonzero left element")
        / d;
    let beyond = descendants_beyond(&scaled, x)?;
    Ok(ChainCount::Finite(1 + beyond.len() as u64))
}

/// The children of `s` that lie in infinite chains, at most two: only the
/// children removing the conductor or the conductor plus one can qualify.
pub fn chain_children(s: &NumericalSemigroup) -> Vec<NumericalSemigroup> {
    let c = s.conductor();
    let effective = s.effective_generators();
    let mut out = Vec::new();
    for e in [c, c + 1] {
        if effective.binary_search(&e).is_ok() {
            let ch = s.child_removing(e);
            if in_infinite_chain(&ch) {
                out.push(ch);
            }
        }
    }
    debug_assert!(
        effective
            .iter()
            .filter(|&&e| e != c && e != c + 1)
            .all(|&e| !in_infinite_chain(&s.child_removing(e))),
        "a child beyond the conductor candidates lies in a chain"
    );
    out
}

/// The elements of the chain named by `seed`, shallowest first, truncated at
/// the first element whose genus exceeds `up_to_genus`. Consecutive elements
/// are parent and child.
pub fn chain_from_seed(seed: &ChainSeed, up_to_genus: u64) -> Vec<NumericalSemigroup> {
    let d = seed.factor;
    let base = &seed.base;
    let in_scaled = |x: u64| x.is_multiple_of(d) && base.contains(x / d);
    let mut out = Vec::new();
    let mut gaps: Vec<u64> = Vec::new();
    let mut j = 0u64;
    loop {
        // element j and element j+1 coincide exactly when j is in the scaled base
        if j == 0 || !in_scaled(j - 1) {
            if gaps.len() as u64 > up_to_genus {
                break;
            }
            out.push(NumericalSemigroup::from_gaps_trusted(&gaps));
        }
        if !in_scaled(j) {
            gaps.push(j);
        }
        j += 1;
    }
    out
}

/// Recovers the seed of a chain from a consecutive prefix of its elements
/// (shallowest first).
///
/// The two deepest non-ordinary elements must already agree on the scaled
/// structure below their conductors; the candidate seed is validated by
/// regenerating the chain and checking it covers the prefix.
pub fn seed_from_prefix(prefix: &[NumericalSemigroup]) -> Result<ChainSeed, Error> {
    if prefix.len() < 2 {
        return Err(Error::PrefixTooShort);
    }
    for pair in prefix.windows(2) {
        let p = tree::parent(&pair[1]).map_err(|_| {
            Error::RangeError("prefix contains the root as a child".into())
        })?;
        if p != pair[0] {
            return Err(Error::RangeError("prefix is not a consecutive parent chain".into()));
        }
    }
    if let Some(bad) = prefix.iter().find(|s| !in_infinite_chain(s)) {
        return Err(Error::RangeError(format!(
            "prefix element {bad} lies in no infinite chain"
        )));
    }
    let non_ordinary: Vec<&NumericalSemigroup> =
        prefix.iter().filter(|s| !s.is_ordinary()).collect();
    if non_ordinary.len() < 2 {
        return Err(Error::PrefixTooShort);
    }
    let deepest = non_ordinary[non_ordinary.len() - 1];
    let previous = non_ordinary[non_ordinary.len() - 2];
    let seed_of = |s: &NumericalSemigroup| -> Result<ChainSeed, Error> {
        let d = left_gcd(s)?;
        if d == 1 {
            return Err(Error::PrefixTooShort);
        }
        ChainSeed::new(d, scale_down(s, d)?)
    };
    let candidate = seed_of(deepest)?;
    if candidate != seed_of(previous)? {
        return Err(Error::PrefixTooShort);
    }
    let regenerated = chain_from_seed(&candidate, deepest.genus());
    if prefix.iter().all(|p| regenerated.contains(p)) {
        Ok(candidate)
    } else {
        Err(Error::PrefixTooShort)
    }
}

/// A node is fertile when a strict majority of its children lie in infinite
/// chains (leaves are not fertile).
pub fn is_fertile(s: &NumericalSemigroup) -> bool {
    let h = tree::efficacy(s);
    h > 0 && 2 * chain_children(s).len() as u64 > h
}

/// Efficacy 3 with exactly two chain children.
pub fn is_type_c(s: &NumericalSemigroup) -> bool {
    tree::efficacy(s) == 3 && chain_children(s).len() == 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ns(gaps: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::from_gaps(gaps.iter().copied()).unwrap()
    }

    fn a_node() -> NumericalSemigroup {
        ns(&[1, 2, 3, 5]) // {0,4,6,->}
    }

    #[test]
    fn left_gcd_examples() {
        assert_eq!(left_gcd(&a_node()).unwrap(), 4);
        assert_eq!(left_gcd(&ns(&[1, 3])).unwrap(), 2); // {0,2,4,->}
        let leaf = NumericalSemigroup::from_generators(&[4, 5, 6]).unwrap();
        assert_eq!(left_gcd(&leaf).unwrap(), 1);
        assert_eq!(
            left_gcd(&ns(&[1, 2])).unwrap_err(),
            Error::OrdinaryInput
        );
    }

    #[test]
    fn in_chain_examples() {
        assert!(in_infinite_chain(&ns(&[1, 2, 3, 4, 5, 6]))); // {0,7,->}
        assert!(in_infinite_chain(&a_node()));
        assert!(!in_infinite_chain(&ns(&[1, 2, 3, 5, 9]))); // {0,4,6,7,8,10,->}
    }

    #[test]
    fn max_descendant_examples() {
        // {0,3,4,6,->} with left {3,4} is its own deepest descendant
        let s = ns(&[1, 2, 5]);
        let d = max_descendant(&s).unwrap();
        assert_eq!(d, NumericalSemigroup::from_generators(&[3, 4]).unwrap());
        assert_eq!(d, s);

        // {0,4,5,8,->} goes down to <4,5>
        let s = ns(&[1, 2, 3, 6, 7]);
        let d = max_descendant(&s).unwrap();
        assert_eq!(d, NumericalSemigroup::from_generators(&[4, 5]).unwrap());
        assert_eq!(d.genus(), 6);

        let leaf = NumericalSemigroup::from_generators(&[4, 5, 6]).unwrap();
        assert_eq!(max_descendant(&leaf).unwrap(), leaf);

        assert_eq!(max_descendant(&a_node()).unwrap_err(), Error::NotApplicable);
    }

    #[test]
    fn scale_down_examples() {
        let h2 = ns(&[1, 3]);
        assert_eq!(scale_down(&h2, 2).unwrap(), NumericalSemigroup::trivial());

        // {0,6,10,12,14,16,->} / 2 = {0,3,5,6,7,8,->}
        let t1 = ns(&[1, 2, 3, 4, 5, 7, 8, 9, 11, 13, 15]);
        assert_eq!(scale_down(&t1, 2).unwrap(), ns(&[1, 2, 4]));

        // {0,6,8,->} / 2 = {0,3,4,->}
        let s = ns(&[1, 2, 3, 4, 5, 7]);
        assert_eq!(scale_down(&s, 2).unwrap(), ns(&[1, 2]));

        assert_eq!(
            scale_down(&ns(&[1, 2, 5]), 2).unwrap_err(),
            Error::InvalidDivisor { d: 2 }
        );
    }

    #[test]
    fn descendants_beyond_examples() {
        // descendants of {0,4,->} beyond 6 include {0,4,5,6,8,->} but not
        // {0,4,5,8,9,10,12,->}
        let ord3 = ns(&[1, 2, 3]);
        let beyond = descendants_beyond(&ord3, 6).unwrap();
        let inside = NumericalSemigroup::from_generators(&[4, 5, 6]).unwrap();
        let outside = NumericalSemigroup::from_generators(&[4, 5]).unwrap();
        assert!(beyond.contains(&inside));
        assert!(!beyond.contains(&outside));

        assert!(descendants_beyond(&NumericalSemigroup::trivial(), 1)
            .unwrap()
            .is_empty());

        // {0,3,5,6,7,8,->} has no descendants beyond 7
        let t1_scaled = ns(&[1, 2, 4]);
        assert!(descendants_beyond(&t1_scaled, 7).unwrap().is_empty());
    }

    #[test]
    fn chain_count_examples() {
        assert_eq!(
            count_infinite_chains(&ns(&[1, 3])).unwrap(),
            ChainCount::Finite(1)
        );
        assert_eq!(count_infinite_chains(&a_node()).unwrap(), ChainCount::Infinite);
        let leaf = NumericalSemigroup::from_generators(&[4, 5, 6]).unwrap();
        assert_eq!(count_infinite_chains(&leaf).unwrap_err(), Error::NotInChain);
        assert_eq!(
            count_infinite_chains(&ns(&[1, 2])).unwrap(),
            ChainCount::Infinite
        );
    }

    #[test]
    fn chain_children_examples() {
        let a = a_node();
        let cc = chain_children(&a);
        assert_eq!(cc, vec![ns(&[1, 2, 3, 5, 6]), ns(&[1, 2, 3, 5, 7])]);

        let b = ns(&[1, 2, 3, 5, 6]); // {0,4,7,->}
        let cc = chain_children(&b);
        assert_eq!(cc, vec![ns(&[1, 2, 3, 5, 6, 7])]); // {0,4,8,->}

        let leaf = NumericalSemigroup::from_generators(&[4, 5, 6]).unwrap();
        assert!(chain_children(&leaf).is_empty());

        let root = NumericalSemigroup::trivial();
        assert_eq!(chain_children(&root), vec![ns(&[1])]);
    }

    #[test]
    fn chain_from_seed_hyperelliptic() {
        let seed = ChainSeed::new(2, NumericalSemigroup::trivial()).unwrap();
        let chain = chain_from_seed(&seed, 3);
        assert_eq!(
            chain,
            vec![
                NumericalSemigroup::trivial(),
                ns(&[1]),
                ns(&[1, 3]),
                ns(&[1, 3, 5]),
            ]
        );
        for pair in chain.windows(2) {
            assert_eq!(tree::parent(&pair[1]).unwrap(), pair[0]);
            assert!(in_infinite_chain(&pair[1]));
        }
    }

    #[test]
    fn chain_from_seed_contains_type_c_family() {
        let seed = ChainSeed::new(4, NumericalSemigroup::trivial()).unwrap();
        let chain = chain_from_seed(&seed, 20);
        // every {4k} ∪ [4n+2, oo) with genus within range shows up
        for n in 1..=6u64 {
            let gaps: Vec<u64> = (1..4 * n + 2).filter(|x| x % 4 != 0).collect();
            let m_n = ns(&gaps);
            if m_n.genus() <= 20 {
                assert!(chain.contains(&m_n), "missing element for n={n}");
            }
        }
    }

    #[test]
    fn seed_roundtrip_hyperelliptic() {
        let seed = ChainSeed::new(2, NumericalSemigroup::trivial()).unwrap();
        let prefix = chain_from_seed(&seed, 6);
        assert_eq!(seed_from_prefix(&prefix).unwrap(), seed);
    }

    #[test]
    fn seed_roundtrip_examples() {
        let base = NumericalSemigroup::from_generators(&[2, 3]).unwrap();
        let seed = ChainSeed::new(3, base).unwrap();
        let prefix = chain_from_seed(&seed, 10);
        assert!(prefix.len() >= 10);
        assert_eq!(seed_from_prefix(&prefix).unwrap(), seed);

        let seed = ChainSeed::new(4, NumericalSemigroup::trivial()).unwrap();
        let prefix = chain_from_seed(&seed, 12);
        assert!(prefix.len() >= 12);
        assert_eq!(seed_from_prefix(&prefix).unwrap(), seed);
    }

    #[test]
    fn short_prefix_is_rejected() {
        let seed = ChainSeed::new(2, NumericalSemigroup::trivial()).unwrap();
        let prefix = chain_from_seed(&seed, 1);
        assert_eq!(seed_from_prefix(&prefix).unwrap_err(), Error::PrefixTooShort);
    }

    #[test]
    fn fertile_examples() {
        assert!(is_fertile(&ns(&[1]))); // {0,2,->}
        assert!(!is_fertile(&ns(&[1, 2, 3]))); // {0,4,->}: 2 of 4 children chain
        let m2 = ns(&(1..10).filter(|x| x % 4 != 0).collect::<Vec<_>>()); // {0,4,8,10,->}
        assert!(is_type_c(&m2));
        assert!(is_fertile(&m2));
        assert!(is_fertile(&NumericalSemigroup::trivial()));
    }
}

//! Constructors for the named semigroup families and the push operator.
//!
//! Besides the classical ordinary and hyperelliptic families this module
//! builds the genus-3n+1 family whose members have efficacy 3 with two chain
//! children, the 23 labeled multiplicity-6 chain families, the branch nodes
//! of the two exceptional multiplicity-6 chains, and the push-by-multiplicity
//! operator that drives every self-replication argument.

use crate::chains;
use crate::error::Error;
use crate::semigroup::NumericalSemigroup;
use crate::tree;

/// Fixed-multiplicity tuple notation: `(b_1,...,b_j)_n` with multiplicity
/// `m` expands to the multiples of `m` up to `n*m`, the shifted offsets
/// `n*m + b_i`, and everything from `n*m + b_j` up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleNotation {
    pub multiplicity: u64,
    pub n: u64,
    pub betas: Vec<u64>,
}

impl TupleNotation {
    pub fn new(multiplicity: u64, n: u64, betas: Vec<u64>) -> Result<Self, Error> {
        if multiplicity < 2 {
            return Err(Error::RangeError("tuple multiplicity must be at least 2".into()));
        }
        if n < 1 {
            return Err(Error::RangeError("tuple index must be positive".into()));
        }
        if betas.is_empty() {
            return Err(Error::RangeError("tuple offset list is empty".into()));
        }
        if betas[0] == 0 || betas.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::RangeError(
                "tuple offsets must be strictly increasing positive integers".into(),
            ));
        }
        Ok(TupleNotation {
            multiplicity,
            n,
            betas,
        })
    }
}

impl std::fmt::Display for TupleNotation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let betas: Vec<String> = self.betas.iter().map(|b| b.to_string()).collect();
        write!(f, "({})_{}", betas.join(","), self.n)
    }
}

/// The ordinary semigroup of genus `g`: 0 and everything from `g + 1` up.
pub fn ordinary(g: u64) -> NumericalSemigroup {
    let gaps: Vec<u64> = (1..=g).collect();
    NumericalSemigroup::from_gaps_trusted(&gaps)
}

/// The hyperelliptic semigroup of genus `g`: even numbers up to `2g` and
/// everything beyond.
pub fn hyperelliptic(g: u64) -> NumericalSemigroup {
    let gaps: Vec<u64> = (0..g).map(|i| 2 * i + 1).collect();
    NumericalSemigroup::from_gaps_trusted(&gaps)
}

/// The genus-`3n+1` semigroup made of the multiples of 4 up to `4n` and
/// everything from `4n + 2` up. These are exactly the non-ordinary nodes of
/// efficacy 3 with two chain children, and the branch points of the
/// multiplicity-4 chain subtree.
pub fn type_c(n: u64) -> NumericalSemigroup {
    assert!(n >= 1, "family index must be positive");
    let gaps: Vec<u64> = (1..4 * n + 2).filter(|x| x % 4 != 0).collect();
    NumericalSemigroup::from_gaps_trusted(&gaps)
}

/// Expands tuple notation into the semigroup it denotes.
pub fn from_tuple(t: &TupleNotation) -> Result<NumericalSemigroup, Error> {
    let m = t.multiplicity;
    let base = t.n * m;
    let conductor = base + *t.betas.last().expect("nonempty");
    let mut members = vec![false; conductor as usize];
    members[0] = true;
    for k in 1..=t.n {
        members[(k * m) as usize] = true;
    }
    for &b in &t.betas {
        let x = base + b;
        if x < conductor {
            members[x as usize] = true;
        }
    }
    let gaps: Vec<u64> = (1..conductor).filter(|&x| !members[x as usize]).collect();
    let s = NumericalSemigroup::from_gaps(gaps)?;
    if s.multiplicity() != m {
        return Err(Error::NotExpressible { multiplicity: m });
    }
    Ok(s)
}

/// Writes a semigroup in tuple notation with the given multiplicity, using
/// the largest valid `n` (the canonical form). Fails for ordinary semigroups
/// and for semigroups whose members below `n*m` are not exactly the
/// multiples of `m`.
pub fn to_tuple(s: &NumericalSemigroup, m: u64) -> Result<TupleNotation, Error> {
    if s.multiplicity() != m || s.is_ordinary() {
        return Err(Error::NotExpressible { multiplicity: m });
    }
    let c = s.conductor();
    let left = s.left_elements();
    let mut n = 0u64;
    loop {
        let next = (n + 1) * m;
        if next >= c || !s.contains(next) {
            break;
        }
        // no member may sit strictly between consecutive multiples
        if left.iter().any(|&x| x > n * m && x < next) {
            break;
        }
        n += 1;
    }
    if n == 0 {
        return Err(Error::NotExpressible { multiplicity: m });
    }
    let mut betas: Vec<u64> = left
        .iter()
        .filter(|&&x| x > n * m)
        .map(|&x| x - n * m)
        .collect();
    betas.push(c - n * m);
    let t = TupleNotation::new(m, n, betas)?;
    if from_tuple(&t)? != *s {
        return Err(Error::NotExpressible { multiplicity: m });
    }
    Ok(t)
}

/// Labels of the 23 multiplicity-6 chain families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[allow(missing_docs)]
pub enum M6Label {
    A, B, C, D, E, F, G, H, I, J, K, L, M, N, O, P, Q, R, S, T, U, V, X,
}

impl M6Label {
    pub const ALL: [M6Label; 23] = [
        M6Label::A, M6Label::B, M6Label::C, M6Label::D, M6Label::E, M6Label::F,
        M6Label::G, M6Label::H, M6Label::I, M6Label::J, M6Label::K, M6Label::L,
        M6Label::M, M6Label::N, M6Label::O, M6Label::P, M6Label::Q, M6Label::R,
        M6Label::S, M6Label::T, M6Label::U, M6Label::V, M6Label::X,
    ];

    /// Tuple offsets of the labeled family.
    pub fn betas(self) -> &'static [u64] {
        match self {
            M6Label::A => &[2],
            M6Label::B => &[3],
            M6Label::C => &[2, 4],
            M6Label::D => &[4],
            M6Label::E => &[3, 5],
            M6Label::F => &[2, 5],
            M6Label::G => &[2, 4, 6],
            M6Label::H => &[5],
            M6Label::I => &[4, 6],
            M6Label::J => &[3, 6],
            M6Label::K => &[2, 6],
            M6Label::L => &[2, 4, 6, 8],
            M6Label::M => &[6],
            M6Label::N => &[4, 6, 8],
            M6Label::O => &[3, 6, 8],
            M6Label::P => &[2, 6, 8],
            M6Label::Q => &[2, 4, 6, 8, 10],
            M6Label::R => &[6, 8],
            M6Label::S => &[4, 6, 9],
            M6Label::T => &[4, 6, 8, 10],
            M6Label::U => &[3, 6, 9],
            M6Label::V => &[2, 6, 8, 10],
            M6Label::X => &[2, 4, 6, 8, 10, 12],
        }
    }
}

impl std::fmt::Display for M6Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

/// The n-th member of a labeled multiplicity-6 chain family.
pub fn m6_family(label: M6Label, n: u64) -> NumericalSemigroup {
    let t = TupleNotation::new(6, n, label.betas().to_vec()).expect("static offsets are valid");
    from_tuple(&t).expect("labeled families are semigroups")
}

/// Branch node of the chain through the S family: for `1 <= t <= n + 1`,
/// the multiplicity-6 semigroup with offsets `a_i` where `a_i = 3i + 1` for
/// odd `i` (except the last), `3i` for even `i`, and `3(2t+1) - 1` at the
/// last index. Its genus is `5n + 4t + 1`.
pub fn s_chain_branch(n: u64, t: u64) -> Result<NumericalSemigroup, Error> {
    if n < 1 || t < 1 || t > n + 1 {
        return Err(Error::RangeError(format!(
            "branch index t={t} outside 1..={} for n={n}",
            n + 1
        )));
    }
    let count = 2 * t + 1;
    let betas: Vec<u64> = (1..=count)
        .map(|i| {
            if i == count {
                3 * i - 1
            } else if i % 2 == 1 {
                3 * i + 1
            } else {
                3 * i
            }
        })
        .collect();
    from_tuple(&TupleNotation::new(6, n, betas)?)
}

/// Branch node of the chain through the V family: for `1 <= t <= n`, the
/// multiplicity-6 semigroup with offsets `b_i` where `b_i = 3i - 1` for odd
/// `i`, `3i` for even `i` (except the last), and `3(2t+2) - 2` at the last
/// index. Its genus is `5n + 4t + 2`.
pub fn v_chain_branch(n: u64, t: u64) -> Result<NumericalSemigroup, Error> {
    if n < 1 || t < 1 || t > n {
        return Err(Error::RangeError(format!(
            "branch index t={t} outside 1..={n} for n={n}"
        )));
    }
    let count = 2 * t + 2;
    let betas: Vec<u64> = (1..=count)
        .map(|i| {
            if i == count {
                3 * i - 2
            } else if i % 2 == 1 {
                3 * i - 1
            } else {
                3 * i
            }
        })
        .collect();
    from_tuple(&TupleNotation::new(6, n, betas)?)
}

/// Push by the multiplicity: 0 together with every member shifted up by the
/// multiplicity. Keeps the multiplicity, raises the genus by `m - 1` and the
/// conductor by `m`, and preserves both the child relation and chain
/// membership.
pub fn push(s: &NumericalSemigroup) -> NumericalSemigroup {
    if s.is_trivial() {
        return s.clone();
    }
    let m = s.multiplicity();
    let mut gaps: Vec<u64> = (1..m).collect();
    gaps.extend(s.gaps().into_iter().map(|x| x + m));
    NumericalSemigroup::from_gaps_trusted(&gaps)
}

/// Push iterated `k` times.
pub fn push_iter(s: &NumericalSemigroup, k: u64) -> NumericalSemigroup {
    let mut out = s.clone();
    for _ in 0..k {
        out = push(&out);
    }
    out
}

/// Inverse of [`push`] when one exists: shifts the nonzero members down by
/// the multiplicity and checks the result is a semigroup that pushes back.
pub fn unpush(s: &NumericalSemigroup) -> Option<NumericalSemigroup> {
    if s.is_trivial() {
        return Some(s.clone());
    }
    let m = s.multiplicity();
    let gaps: Vec<u64> = s.gaps().into_iter().filter(|&x| x > m).map(|x| x - m).collect();
    let candidate = NumericalSemigroup::from_gaps(gaps).ok()?;
    (push(&candidate) == *s).then_some(candidate)
}

/// The 23 labeled multiplicity-6 semigroups at index `n`; exactly the chain
/// subtree hanging off the first one, truncated five levels deep.
pub fn m6_labeled_nodes(n: u64) -> Vec<NumericalSemigroup> {
    M6Label::ALL.iter().map(|&l| m6_family(l, n)).collect()
}

/// Follows chain children downward from `start`, preferring the child that
/// removes the conductor whenever there are two. This is the path of the
/// infinite chain that keeps passing through the branch nodes.
pub fn chain_descent(start: &NumericalSemigroup, max_genus: u64) -> Vec<NumericalSemigroup> {
    debug_assert!(chains::in_infinite_chain(start));
    let mut out = vec![start.clone()];
    let mut cur = start.clone();
    while cur.genus() < max_genus {
        let cc = chains::chain_children(&cur);
        match cc.into_iter().next() {
            Some(next) => {
                out.push(next.clone());
                cur = next;
            }
            None => break,
        }
    }
    out
}

/// The seven-node pattern replicated through the multiplicity-4 chain
/// subtree: a branch node, its two chain children, and the single chain
/// child below each for two more levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotifInstance {
    pub root: NumericalSemigroup,
    pub nodes: Vec<NumericalSemigroup>,
}

fn m4_chain_filter(s: &NumericalSemigroup) -> bool {
    s.multiplicity() == 4 && chains::in_infinite_chain(s)
}

/// Branch nodes (two chain children) of the multiplicity-4 chain subtree up
/// to `max_genus`, shallowest first. Each one past the first is the push of
/// the previous.
pub fn m4_motif_roots(max_genus: u64) -> Vec<NumericalSemigroup> {
    let root = tree::multiplicity_subtree_root(4);
    let mut roots = Vec::new();
    tree::enumerate(&root, max_genus, &m4_chain_filter, &mut |r| {
        if !r.semigroup.is_ordinary() && chains::chain_children(&r.semigroup).len() == 2 {
            roots.push(r.semigroup.clone());
        }
    });
    roots.sort();
    for pair in roots.windows(2) {
        debug_assert_eq!(push(&pair[0]), pair[1]);
    }
    roots
}

/// The complete seven-node instance rooted at `root`, or None when any of
/// its nodes would exceed `max_genus` or the local shape is not the motif.
pub fn m4_motif_instance(root: &NumericalSemigroup, max_genus: u64) -> Option<MotifInstance> {
    if root.genus() + 3 > max_genus {
        return None;
    }
    let level1 = chains::chain_children(root);
    if level1.len() != 2 {
        return None;
    }
    let mut nodes = vec![root.clone()];
    nodes.extend(level1.iter().cloned());
    let mut level = level1;
    for _ in 0..2 {
        let mut next = Vec::new();
        for n in &level {
            let cc = chains::chain_children(n);
            if cc.len() != 1 {
                return None;
            }
            next.extend(cc);
        }
        nodes.extend(next.iter().cloned());
        level = next;
    }
    Some(MotifInstance {
        root: root.clone(),
        nodes,
    })
}

/// Number of complete self-replications of the seven-node motif inside the
/// multiplicity-4 chain subtree bounded by `max_genus`: complete instances
/// whose root is the push image of the previous branch node, i.e. every
/// instance except the original one.
pub fn m4_complete_replications(max_genus: u64) -> usize {
    let roots = m4_motif_roots(max_genus);
    roots
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(i, r)| {
            **r == push(&roots[i - 1]) && m4_motif_instance(r, max_genus).is_some()
        })
        .count()
}

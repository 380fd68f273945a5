//! Canonical representation of a numerical semigroup.
//!
//! A numerical semigroup is a subset of the non-negative integers that
//! contains 0, is closed under addition and has finite complement. The
//! non-members are its *gaps*, the number of gaps is the *genus*, the least
//! nonzero member is the *multiplicity* and the least element from which
//! every integer is a member is the *conductor*.
//!
//! Membership is stored as a bit-vector on the window `[0, conductor +
//! multiplicity)`; every integer at or beyond the window is implicitly a
//! member. The window is exactly what the child construction needs: all
//! effective generators live in `[conductor, conductor + multiplicity)`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use crate::error::Error;

/// Strictly increasing list of generators.
pub type GeneratorList = Vec<u64>;

const DEFAULT_MAX_WINDOW: u64 = 1 << 20;

/// Largest membership window (in bits) a constructor accepts.
///
/// The default of 2^20 is far beyond anything reachable at desk scale; the
/// `SG_MAX_WINDOW` environment variable overrides it (read once).
pub fn max_window() -> u64 {
    static LIMIT: OnceLock<u64> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var("SG_MAX_WINDOW")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_MAX_WINDOW)
    })
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// gcd of a slice, 0 for an empty slice.
pub(crate) fn gcd_all(values: &[u64]) -> u64 {
    values.iter().fold(0, |acc, &v| gcd(acc, v))
}

/// A numerical semigroup with cached statistics.
///
/// Equality and hashing are structural: two values are equal iff their
/// conductor and window bits match, and the window length is always
/// normalized to exactly `conductor + multiplicity` bits with zeroed tail.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumericalSemigroup {
    words: Vec<u64>,
    conductor: u64,
    multiplicity: u64,
    genus: u64,
}

#[inline]
fn word_count(bits: u64) -> usize {
    bits.div_ceil(64) as usize
}

impl NumericalSemigroup {
    /// The semigroup of all non-negative integers (the tree root).
    pub fn trivial() -> Self {
        NumericalSemigroup {
            words: vec![1],
            conductor: 0,
            multiplicity: 1,
            genus: 0,
        }
    }

    /// Builds the semigroup whose gap set is exactly `gaps`.
    ///
    /// Fails with [`Error::ClosureViolation`] (carrying a witnessing pair)
    /// when the complement is not closed under addition.
    pub fn from_gaps<I: IntoIterator<Item = u64>>(gaps: I) -> Result<Self, Error> {
        let mut gaps: Vec<u64> = gaps.into_iter().collect();
        gaps.sort_unstable();
        gaps.dedup();
        if gaps.first() == Some(&0) {
            return Err(Error::RangeError("0 cannot be a gap".into()));
        }
        let s = Self::from_sorted_gaps(&gaps)?;
        s.check_closure()?;
        Ok(s)
    }

    /// Same as [`from_gaps`](Self::from_gaps) for callers that already hold a
    /// sorted, deduplicated gap list known to define a semigroup.
    pub(crate) fn from_gaps_trusted(gaps: &[u64]) -> Self {
        let s = Self::from_sorted_gaps(gaps).expect("window guard exceeded");
        debug_assert!(s.check_closure().is_ok());
        s
    }

    fn from_sorted_gaps(gaps: &[u64]) -> Result<Self, Error> {
        let conductor = gaps.last().map_or(0, |&f| f + 1);
        // multiplicity: least positive non-gap
        let mut m = 1;
        for &g in gaps {
            if g == m {
                m += 1;
            } else if g > m {
                break;
            }
        }
        let window = conductor + m;
        let limit = max_window();
        if window > limit {
            return Err(Error::WindowTooLarge {
                required: window,
                limit,
            });
        }
        let n = word_count(window);
        let mut words = vec![u64::MAX; n];
        mask_tail(&mut words, window);
        for &g in gaps {
            words[(g / 64) as usize] &= !(1u64 << (g % 64));
        }
        Ok(NumericalSemigroup {
            words,
            conductor,
            multiplicity: m,
            genus: gaps.len() as u64,
        })
    }

    /// Builds the smallest semigroup containing 0 and every generator.
    ///
    /// Fails with [`Error::NotCoprime`] when the generators have a common
    /// divisor, since the complement would then be infinite.
    pub fn from_generators(gens: &[u64]) -> Result<Self, Error> {
        if gens.is_empty() {
            return Err(Error::RangeError("generator set is empty".into()));
        }
        if gens.contains(&0) {
            return Err(Error::RangeError("0 is not a generator".into()));
        }
        let d = gcd_all(gens);
        if d != 1 {
            return Err(Error::NotCoprime { gcd: d });
        }
        if gens.contains(&1) {
            return Ok(Self::trivial());
        }
        let m = *gens.iter().min().expect("nonempty");
        let hi = *gens.iter().max().expect("nonempty");
        // Saturate sums until a run of `m` consecutive members appears; from
        // such a run everything above is reachable by adding m.
        let limit = max_window();
        let mut bound = m.saturating_mul(hi).max(64);
        loop {
            if bound.saturating_add(m) > limit {
                return Err(Error::WindowTooLarge {
                    required: bound.saturating_add(m),
                    limit,
                });
            }
            let len = (bound + 1) as usize;
            let mut member = vec![false; len];
            member[0] = true;
            for i in 1..len {
                for &g in gens {
                    let g = g as usize;
                    if g <= i && member[i - g] {
                        member[i] = true;
                        break;
                    }
                }
            }
            let mut run = 0usize;
            let mut run_start = None;
            for (i, &b) in member.iter().enumerate() {
                if b {
                    run += 1;
                    if run as u64 == m {
                        run_start = Some(i + 1 - run);
                        break;
                    }
                } else {
                    run = 0;
                }
            }
            if let Some(start) = run_start {
                let gaps: Vec<u64> = (1..start as u64).filter(|&x| !member[x as usize]).collect();
                return Ok(Self::from_gaps_trusted(&gaps));
            }
            bound = bound.saturating_mul(2);
        }
    }

    /// Conductor `c`: least element with `[c, oo)` contained in the semigroup.
    #[inline]
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Multiplicity: least nonzero member (1 for the trivial semigroup).
    #[inline]
    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }

    /// Genus: number of gaps.
    #[inline]
    pub fn genus(&self) -> u64 {
        self.genus
    }

    /// Frobenius number `c - 1` (-1 for the trivial semigroup).
    #[inline]
    pub fn frobenius(&self) -> i64 {
        self.conductor as i64 - 1
    }

    /// True for the semigroup of all non-negative integers.
    #[inline]
    pub fn is_trivial(&self) -> bool {
        self.genus == 0
    }

    #[inline]
    pub(crate) fn window_len(&self) -> u64 {
        self.conductor + self.multiplicity
    }

    /// Membership test.
    #[inline]
    pub fn contains(&self, x: u64) -> bool {
        if x >= self.conductor {
            return true;
        }
        self.words[(x / 64) as usize] >> (x % 64) & 1 == 1
    }

    /// Number of members strictly below the conductor (left elements).
    #[inline]
    pub fn left_count(&self) -> u64 {
        self.conductor - self.genus
    }

    /// The i-th smallest member; index 0 is always 0.
    pub fn element(&self, i: u64) -> u64 {
        let left = self.left_count();
        if i >= left {
            return self.conductor + (i - left);
        }
        // select the i-th set bit below the conductor
        let mut remaining = i;
        for (w, &word) in self.words.iter().enumerate() {
            let ones = word.count_ones() as u64;
            if remaining < ones {
                let mut word = word;
                for _ in 0..remaining {
                    word &= word - 1;
                }
                return w as u64 * 64 + word.trailing_zeros() as u64;
            }
            remaining -= ones;
        }
        unreachable!("index below left_count selects a window bit")
    }

    /// Members strictly below the conductor, in increasing order (0 included
    /// when the conductor is positive; empty for the trivial semigroup).
    pub fn left_elements(&self) -> Vec<u64> {
        self.members_below(self.conductor)
    }

    /// Nonzero members strictly below the conductor.
    pub fn nonzero_left_elements(&self) -> Vec<u64> {
        self.members_below(self.conductor)
            .into_iter()
            .filter(|&x| x != 0)
            .collect()
    }

    /// Members strictly below `bound`, in increasing order.
    pub fn members_below(&self, bound: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let window = self.window_len().min(bound);
        for x in 0..window {
            if self.words[(x / 64) as usize] >> (x % 64) & 1 == 1 {
                out.push(x);
            }
        }
        for x in self.window_len()..bound {
            out.push(x);
        }
        out
    }

    /// The gap set, sorted increasing.
    pub fn gaps(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.genus as usize);
        for x in 1..self.conductor {
            if !self.contains(x) {
                out.push(x);
            }
        }
        out
    }

    /// Ordinary semigroups consist of 0 and everything from the multiplicity up.
    #[inline]
    pub fn is_ordinary(&self) -> bool {
        self.left_count() <= 1
    }

    /// Hyperelliptic semigroups consist of the even numbers up to `2g`
    /// together with everything beyond (the trivial semigroup qualifies).
    pub fn is_hyperelliptic(&self) -> bool {
        if self.conductor != 2 * self.genus {
            return false;
        }
        self.members_below(self.conductor)
            .iter()
            .all(|&x| x % 2 == 0)
    }

    /// Set bits covering every decomposable window position, i.e. every sum
    /// of two nonzero members that lands inside the window.
    fn decomposable_mask(&self) -> Vec<u64> {
        let window = self.window_len();
        let n = self.words.len();
        let mut acc = vec![0u64; n];
        // nonzero members only: a + 0 is not a decomposition
        let mut base = self.words.clone();
        base[0] &= !1;
        // Any in-window sum a + b of nonzero members has its smaller addend
        // below the conductor, so shifting the window by each nonzero left
        // member covers all decomposable positions.
        for a in self.nonzero_left_elements() {
            let shift_w = (a / 64) as usize;
            let shift_b = (a % 64) as u32;
            for i in (shift_w..n).rev() {
                let mut v = base[i - shift_w] << shift_b;
                if shift_b > 0 && i > shift_w {
                    v |= base[i - shift_w - 1] >> (64 - shift_b);
                }
                acc[i] |= v;
            }
        }
        mask_tail(&mut acc, window);
        acc
    }

    /// Minimal generators: nonzero members with no decomposition as a sum of
    /// two nonzero members. Sorted increasing.
    pub fn minimal_generators(&self) -> GeneratorList {
        if self.is_trivial() {
            return vec![1];
        }
        let acc = self.decomposable_mask();
        let mut out = Vec::new();
        for x in 1..self.window_len() {
            let w = (x / 64) as usize;
            let b = x % 64;
            if self.words[w] >> b & 1 == 1 && acc[w] >> b & 1 == 0 {
                out.push(x);
            }
        }
        out
    }

    /// Effective (right) generators: minimal generators at or beyond the
    /// conductor. Removing one yields a child in the semigroup tree.
    pub fn effective_generators(&self) -> GeneratorList {
        if self.is_trivial() {
            return vec![1];
        }
        let acc = self.decomposable_mask();
        let mut out = Vec::new();
        for x in self.conductor..self.window_len() {
            let w = (x / 64) as usize;
            let b = x % 64;
            if self.words[w] >> b & 1 == 1 && acc[w] >> b & 1 == 0 {
                out.push(x);
            }
        }
        out
    }

    /// The child obtained by removing the effective generator `e`.
    pub fn child_removing(&self, e: u64) -> NumericalSemigroup {
        debug_assert!(
            self.effective_generators().contains(&e),
            "{e} is not an effective generator"
        );
        let new_mult = if e == self.multiplicity {
            // only ordinary semigroups have their multiplicity effective
            self.multiplicity + 1
        } else {
            self.multiplicity
        };
        let conductor = e + 1;
        let window = conductor + new_mult;
        let n = word_count(window);
        let mut words = vec![u64::MAX; n];
        words[..self.words.len()].copy_from_slice(&self.words);
        set_range(&mut words, self.window_len(), window);
        mask_tail(&mut words, window);
        words[(e / 64) as usize] &= !(1u64 << (e % 64));
        NumericalSemigroup {
            words,
            conductor,
            multiplicity: new_mult,
            genus: self.genus + 1,
        }
    }

    /// Canonical sort/identity key: the gap set.
    pub fn key(&self) -> Vec<u64> {
        self.gaps()
    }

    /// Re-checks the representation invariants; property tests call this on
    /// every constructed value.
    pub fn validate(&self) -> Result<(), Error> {
        let window = self.window_len();
        if self.words.len() != word_count(window) {
            return Err(Error::RangeError("window block count mismatch".into()));
        }
        let mut tail_check = self.words.clone();
        mask_tail(&mut tail_check, window);
        if tail_check != self.words {
            return Err(Error::RangeError("window tail bits not normalized".into()));
        }
        if !self.contains(0) {
            return Err(Error::RangeError("0 must be a member".into()));
        }
        if self.conductor >= 1 && self.contains(self.conductor - 1) {
            return Err(Error::RangeError("conductor - 1 must be a gap".into()));
        }
        for x in self.conductor..window {
            if !self.contains(x) {
                return Err(Error::RangeError(format!("{x} beyond conductor is a gap")));
            }
        }
        let zeros = (1..self.conductor).filter(|&x| !self.contains(x)).count() as u64;
        if zeros != self.genus {
            return Err(Error::RangeError("cached genus mismatch".into()));
        }
        let m = (1..=window).find(|&x| x == window || self.contains(x));
        let m = m.unwrap_or(1);
        if !self.is_trivial() && m != self.multiplicity {
            return Err(Error::RangeError("cached multiplicity mismatch".into()));
        }
        self.check_closure()
    }

    fn check_closure(&self) -> Result<(), Error> {
        // a violating sum is a gap, hence below the conductor
        let members = self.nonzero_left_elements();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i..] {
                let s = a + b;
                if s >= self.conductor {
                    break;
                }
                if !self.contains(s) {
                    return Err(Error::ClosureViolation { a, b });
                }
            }
        }
        Ok(())
    }

    fn display_label(&self) -> String {
        let mut parts: Vec<String> = self
            .left_elements()
            .iter()
            .map(|x| x.to_string())
            .collect();
        parts.push(self.conductor.to_string());
        format!("{{{},\u{2192}}}", parts.join(","))
    }
}

fn mask_tail(words: &mut [u64], window: u64) {
    let used = (window % 64) as u32;
    if used != 0 {
        let last = words.len() - 1;
        words[last] &= (1u64 << used) - 1;
    }
}

fn set_range(words: &mut [u64], from: u64, to: u64) {
    for x in from..to {
        words[(x / 64) as usize] |= 1u64 << (x % 64);
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_label())
    }
}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (g={}, m={}, c={})",
            self.display_label(),
            self.genus,
            self.multiplicity,
            self.conductor
        )
    }
}

impl Ord for NumericalSemigroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.genus
            .cmp(&other.genus)
            .then_with(|| self.key().cmp(&other.key()))
    }
}

impl PartialOrd for NumericalSemigroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

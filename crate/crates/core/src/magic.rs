//! The classical side: magic-square construction and validation, exhaustive and
//! backtracking search, permutation ranking, and the candidate domains handed to Grover.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::statevector::MAX_QUBITS;
use crate::{Error, Result};

/// Largest grid order whose full permutation count `(n²)!` fits in a `u128`.
pub const MAX_DOMAIN_ORDER: usize = 5;

/// `M = n(n² + 1)/2`.
pub fn magic_constant(n: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain("grid order must be at least 1".into()));
    }
    let n = n as u64;
    Ok(n * (n * n + 1) / 2)
}

/// Cell indices of every constrained line of an n×n grid: rows, columns, the main
/// diagonal and the anti-diagonal, in that order.
pub fn lines(n: usize) -> Vec<Vec<usize>> {
    let rows = (0..n).map(|r| (0..n).map(|c| r * n + c).collect());
    let cols = (0..n).map(|c| (0..n).map(|r| r * n + c).collect());
    let diag = (0..n).map(|i| i * n + i).collect();
    let anti = (0..n).map(|i| i * n + (n - 1 - i)).collect();
    rows.chain(cols).chain([diag, anti]).collect()
}

fn is_permutation_of_range(cells: &[u32]) -> bool {
    let m = cells.len();
    let mut seen = vec![false; m + 1];
    cells.iter().all(|&v| {
        let v = v as usize;
        (1..=m).contains(&v) && !std::mem::replace(&mut seen[v], true)
    })
}

/// True iff `cells` (row-major, length n²) is a permutation of 1..n² whose rows,
/// columns and both main diagonals all sum to the magic constant.
pub fn is_magic_cells(n: usize, cells: &[u32]) -> bool {
    let Ok(target) = magic_constant(n) else { return false };
    cells.len() == n * n
        && is_permutation_of_range(cells)
        && lines(n)
            .iter()
            .all(|line| line.iter().map(|&c| cells[c] as u64).sum::<u64>() == target)
}

/// An n×n arrangement of 1..n², stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MagicGrid {
    n: usize,
    cells: Vec<u32>,
}

impl MagicGrid {
    pub fn new(n: usize, cells: Vec<u32>) -> Result<Self> {
        if n == 0 || cells.len() != n * n {
            return Err(Error::Domain(format!(
                "{} cells do not form a {n}x{n} grid",
                cells.len()
            )));
        }
        if !is_permutation_of_range(&cells) {
            return Err(Error::Domain(format!("cells are not a permutation of 1..={}", n * n)));
        }
        Ok(MagicGrid { n, cells })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.cells[row * self.n + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.cells.chunks(self.n)
    }

    pub fn is_magic(&self) -> bool {
        is_magic_cells(self.n, &self.cells)
    }

    /// Bracketed matrix layout with right-aligned columns, e.g. `[[8 1 6]\n [3 5 7]…]`.
    pub fn to_matrix_string(&self) -> String {
        let width = (self.n * self.n).to_string().len();
        let rows: Vec<String> = self
            .rows()
            .map(|row| {
                let items: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
                format!("[{}]", items.join(" "))
            })
            .collect();
        format!("[{}]", rows.join("\n "))
    }
}

/// Plain-text form: `n` on the first line, then n rows of space-separated integers.
impl fmt::Display for MagicGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for row in self.rows() {
            let items: Vec<String> = row.iter().map(u32::to_string).collect();
            writeln!(f, "{}", items.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for MagicGrid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty grid".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("grid order: {e}")))?;
        let mut cells = Vec::with_capacity(n * n);
        for (r, line) in lines.enumerate() {
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse(format!("row {r}: {e}")))?;
            if row.len() != n {
                return Err(Error::Parse(format!("row {r} has {} entries, expected {n}", row.len())));
            }
            cells.extend(row);
        }
        MagicGrid::new(n, cells)
    }
}

/// De la Loubère placement for odd n: start mid-top, move up-right with wraparound,
/// drop one cell down on collision.
pub fn siamese(n: usize) -> Result<MagicGrid> {
    if n == 0 || n.is_multiple_of(2) || n > 99 {
        return Err(Error::Domain(format!(
            "the Siamese construction needs odd 1 ≤ n ≤ 99, got {n}"
        )));
    }
    let mut cells = vec![0u32; n * n];
    let (mut r, mut c) = (0, n / 2);
    for v in 1..=(n * n) as u32 {
        cells[r * n + c] = v;
        let (up, right) = ((r + n - 1) % n, (c + 1) % n);
        if cells[up * n + right] == 0 {
            (r, c) = (up, right);
        } else {
            r = (r + 1) % n;
        }
    }
    MagicGrid::new(n, cells)
}

/// Counters reported by the classical searches.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub candidates_checked: u64,
    pub nodes_visited: u64,
    pub solutions_found: u64,
    pub elapsed: Duration,
}

/// Rearranges `v` into its lexicographic successor; false once `v` is the last permutation.
fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else { return false };
    let j = v.iter().rposition(|&x| x > v[i]).expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Checks every permutation of 1..n² in lexicographic order.
pub fn brute_force(n: usize, stop_at_first: bool) -> Result<(Vec<MagicGrid>, SearchStats)> {
    if n == 0 {
        return Err(Error::Domain("grid order must be at least 1".into()));
    }
    if n > 3 {
        return Err(Error::Capacity(format!(
            "brute force over ({0}²)! permutations is refused for n = {0}; 16! ≈ 2.09e13 already \
             for n = 4",
            n
        )));
    }
    let start = Instant::now();
    let mut stats = SearchStats::default();
    let mut solutions = Vec::new();
    let mut perm: Vec<u32> = (1..=(n * n) as u32).collect();
    loop {
        stats.candidates_checked += 1;
        if is_magic_cells(n, &perm) {
            solutions.push(MagicGrid { n, cells: perm.clone() });
            if stop_at_first {
                break;
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    stats.solutions_found = solutions.len() as u64;
    stats.elapsed = start.elapsed();
    Ok((solutions, stats))
}

struct Backtracker {
    n: usize,
    target: u64,
    lines_through: Vec<Vec<usize>>,
    lines: Vec<Vec<usize>>,
    cells: Vec<u32>,
    used: Vec<bool>,
    stop_at_first: bool,
    solutions: Vec<MagicGrid>,
    stats: SearchStats,
}

impl Backtracker {
    fn new(n: usize, stop_at_first: bool) -> Result<Self> {
        let lines = lines(n);
        let mut lines_through = vec![Vec::new(); n * n];
        for (l, line) in lines.iter().enumerate() {
            for &cell in line {
                lines_through[cell].push(l);
            }
        }
        Ok(Backtracker {
            n,
            target: magic_constant(n)?,
            lines_through,
            lines,
            cells: vec![0; n * n],
            used: vec![false; n * n + 1],
            stop_at_first,
            solutions: Vec::new(),
            stats: SearchStats::default(),
        })
    }

    /// Lines are filled in row-major order, so a line's filled cells are exactly those
    /// with index ≤ `pos`.
    fn feasible(&self, pos: usize) -> bool {
        let m = self.n * self.n;
        self.lines_through[pos].iter().all(|&l| {
            let line = &self.lines[l];
            let filled = line.iter().filter(|&&c| c <= pos);
            let (sum, count) = filled.fold((0u64, 0usize), |(s, k), &c| (s + self.cells[c] as u64, k + 1));
            let remaining = line.len() - count;
            if remaining == 0 {
                return sum == self.target;
            }
            let smallest: u64 = (1..=m as u32)
                .filter(|&v| !self.used[v as usize])
                .take(remaining)
                .map(u64::from)
                .sum();
            let largest: u64 = (1..=m as u32)
                .rev()
                .filter(|&v| !self.used[v as usize])
                .take(remaining)
                .map(u64::from)
                .sum();
            sum + smallest <= self.target && sum + largest >= self.target
        })
    }

    /// Returns true when the search should stop.
    fn search(&mut self, pos: usize) -> bool {
        let m = self.n * self.n;
        if pos == m {
            self.stats.candidates_checked += 1;
            debug_assert!(is_magic_cells(self.n, &self.cells));
            self.solutions.push(MagicGrid { n: self.n, cells: self.cells.clone() });
            return self.stop_at_first;
        }
        for v in 1..=m as u32 {
            if self.used[v as usize] {
                continue;
            }
            self.stats.nodes_visited += 1;
            self.cells[pos] = v;
            self.used[v as usize] = true;
            let stop = self.feasible(pos) && self.search(pos + 1);
            self.used[v as usize] = false;
            self.cells[pos] = 0;
            if stop {
                return true;
            }
        }
        false
    }
}

/// Depth-first search over row-major cells with ascending values, pruning any line
/// that is complete and missums, or whose partial sum can no longer land on M.
pub fn backtracking(n: usize, stop_at_first: bool) -> Result<(Vec<MagicGrid>, SearchStats)> {
    if n == 0 {
        return Err(Error::Domain("grid order must be at least 1".into()));
    }
    if n > 4 {
        return Err(Error::Capacity(format!("backtracking is limited to n ≤ 4, got {n}")));
    }
    let start = Instant::now();
    let mut bt = Backtracker::new(n, stop_at_first)?;
    bt.search(0);
    bt.stats.solutions_found = bt.solutions.len() as u64;
    bt.stats.elapsed = start.elapsed();
    Ok((bt.solutions, bt.stats))
}

/// `m!`, or `None` past `u128`.
pub fn factorial(m: usize) -> Option<u128> {
    (1..=m as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))
}

/// Lexicographic rank of `perm` among the orderings of the ascending `values`.
fn rank_over(perm: &[u32], values: &[u32]) -> Result<u128> {
    let mut remaining = values.to_vec();
    let mut rank = 0u128;
    for (i, v) in perm.iter().enumerate() {
        let pos = remaining
            .binary_search(v)
            .map_err(|_| Error::Domain(format!("value {v} is repeated or out of range")))?;
        remaining.remove(pos);
        let weight = factorial(perm.len() - 1 - i)
            .ok_or_else(|| Error::Capacity("rank exceeds 128 bits".into()))?;
        rank += pos as u128 * weight;
    }
    Ok(rank)
}

fn unrank_over(mut rank: u128, values: &[u32]) -> Vec<u32> {
    let mut remaining = values.to_vec();
    let m = values.len();
    let mut out = Vec::with_capacity(m);
    for i in (0..m).rev() {
        let weight = factorial(i).expect("caller bounds m");
        let pos = (rank / weight) as usize;
        rank %= weight;
        out.push(remaining.remove(pos));
    }
    out
}

/// Lehmer rank of a permutation of 1..m (the identity has rank 0).
pub fn rank(perm: &[u32]) -> Result<u128> {
    if !is_permutation_of_range(perm) {
        return Err(Error::Domain(format!(
            "{perm:?} is not a permutation of 1..={}",
            perm.len()
        )));
    }
    let values: Vec<u32> = (1..=perm.len() as u32).collect();
    rank_over(perm, &values)
}

/// The permutation of 1..m with lexicographic rank `r`.
pub fn unrank(r: u128, m: usize) -> Result<Vec<u32>> {
    let total = factorial(m)
        .ok_or_else(|| Error::Capacity(format!("{m}! does not fit in 128 bits")))?;
    if r >= total {
        return Err(Error::Domain(format!("rank {r} out of range for {m}! = {total}")));
    }
    let values: Vec<u32> = (1..=m as u32).collect();
    Ok(unrank_over(r, &values))
}

/// Where a candidate domain came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DomainLabel {
    FullPermutation,
    CentreFixed,
    Custom(String),
}

impl fmt::Display for DomainLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainLabel::FullPermutation => f.write_str("full-permutation"),
            DomainLabel::CentreFixed => f.write_str("centre-fixed"),
            DomainLabel::Custom(s) => write!(f, "custom: {s}"),
        }
    }
}

type DecodeFn = Arc<dyn Fn(u128) -> Vec<u32> + Send + Sync>;
type ValidFn = Arc<dyn Fn(&[u32]) -> bool + Send + Sync>;

#[derive(Clone)]
enum Codec {
    Permutation { m: usize },
    CentreFixed { n: usize, centre: u32 },
    Custom(DecodeFn),
}

/// A searchable candidate space: indices `0..size` map bijectively onto candidates.
#[derive(Clone)]
pub struct DomainDescriptor {
    size: u128,
    qubit_width: usize,
    label: DomainLabel,
    codec: Codec,
    validity: ValidFn,
    note: Option<String>,
}

impl fmt::Debug for DomainDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DomainDescriptor")
            .field("size", &self.size)
            .field("qubit_width", &self.qubit_width)
            .field("label", &self.label)
            .field("note", &self.note)
            .finish_non_exhaustive()
    }
}

fn qubits_for(size: u128) -> usize {
    if size <= 1 {
        1
    } else {
        (u128::BITS - (size - 1).leading_zeros()) as usize
    }
}

impl DomainDescriptor {
    /// A domain defined by an arbitrary decoder and validity predicate.
    pub fn custom(
        size: u128,
        label: impl Into<String>,
        decode: impl Fn(u128) -> Vec<u32> + Send + Sync + 'static,
        valid: impl Fn(&[u32]) -> bool + Send + Sync + 'static,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::Domain("domain must contain at least one candidate".into()));
        }
        Ok(DomainDescriptor {
            size,
            qubit_width: qubits_for(size),
            label: DomainLabel::Custom(label.into()),
            codec: Codec::Custom(Arc::new(decode)),
            validity: Arc::new(valid),
            note: None,
        })
    }

    pub fn size(&self) -> u128 {
        self.size
    }

    pub fn qubit_width(&self) -> usize {
        self.qubit_width
    }

    pub fn label(&self) -> &DomainLabel {
        &self.label
    }

    pub fn note(&self) -> Option<&str> {
        self.note.as_deref()
    }

    /// True when the register fits the dense simulator.
    pub fn is_simulable(&self) -> bool {
        self.qubit_width <= MAX_QUBITS
    }

    pub fn decode(&self, index: u128) -> Result<Vec<u32>> {
        if index >= self.size {
            return Err(Error::Domain(format!(
                "index {index} outside domain of size {}",
                self.size
            )));
        }
        Ok(self.decode_unchecked(index))
    }

    pub(crate) fn decode_unchecked(&self, index: u128) -> Vec<u32> {
        match &self.codec {
            Codec::Permutation { m } => {
                let values: Vec<u32> = (1..=*m as u32).collect();
                unrank_over(index, &values)
            }
            Codec::CentreFixed { n, centre } => {
                let values: Vec<u32> = (1..=(n * n) as u32).filter(|v| v != centre).collect();
                let mut cells = unrank_over(index, &values);
                cells.insert(n * n / 2, *centre);
                cells
            }
            Codec::Custom(decode) => decode(index),
        }
    }

    /// Index of `candidate`, when the domain has a closed-form inverse and contains it.
    pub fn encode(&self, candidate: &[u32]) -> Option<u128> {
        match &self.codec {
            Codec::Permutation { m } => {
                if candidate.len() != *m {
                    return None;
                }
                rank(candidate).ok()
            }
            Codec::CentreFixed { n, centre } => {
                let mid = n * n / 2;
                if candidate.len() != n * n || candidate[mid] != *centre {
                    return None;
                }
                let mut rest = candidate.to_vec();
                rest.remove(mid);
                let values: Vec<u32> = (1..=(n * n) as u32).filter(|v| v != centre).collect();
                rank_over(&rest, &values).ok()
            }
            Codec::Custom(_) => None,
        }
    }

    /// The domain's own validity predicate (magic-square check for grid domains).
    pub fn is_valid(&self, candidate: &[u32]) -> bool {
        (self.validity)(candidate)
    }
}

/// All `(n²)!` orderings of 1..n², indexed by Lehmer rank.
pub fn full_permutation_domain(n: usize) -> Result<DomainDescriptor> {
    if n == 0 || n > MAX_DOMAIN_ORDER {
        return Err(Error::Capacity(format!(
            "permutation domains are indexed for 1 ≤ n ≤ {MAX_DOMAIN_ORDER}, got {n}"
        )));
    }
    let m = n * n;
    let size = factorial(m).expect("bounded by MAX_DOMAIN_ORDER");
    Ok(DomainDescriptor {
        size,
        qubit_width: qubits_for(size),
        label: DomainLabel::FullPermutation,
        codec: Codec::Permutation { m },
        validity: Arc::new(move |c| is_magic_cells(n, c)),
        note: None,
    })
}

/// Fixes the centre of an odd grid to (n²+1)/2 and ranks the remaining n²−1 values
/// over the other cells.
pub fn reduce_domain(n: usize) -> Result<DomainDescriptor> {
    if n.is_multiple_of(2) {
        return Err(Error::Domain(format!("centre fixing needs odd n, got {n}")));
    }
    if n > MAX_DOMAIN_ORDER {
        return Err(Error::Capacity(format!(
            "permutation domains are indexed for n ≤ {MAX_DOMAIN_ORDER}, got {n}"
        )));
    }
    let m = n * n;
    let centre = m.div_ceil(2) as u32;
    let size = factorial(m - 1).expect("bounded by MAX_DOMAIN_ORDER");
    let note = (n >= 5).then(|| {
        "centre fixing is only known to keep every solution for n = 3; some solutions may be \
         excluded"
            .to_string()
    });
    Ok(DomainDescriptor {
        size,
        qubit_width: qubits_for(size),
        label: DomainLabel::CentreFixed,
        codec: Codec::CentreFixed { n, centre },
        validity: Arc::new(move |c| is_magic_cells(n, c)),
        note,
    })
}

//! Reversible circuit construction: ripple-carry adders, equality comparators,
//! compute/mark/uncompute wrapping, and gate-level phase oracles.
//!
//! Multi-controlled gates are kept native; the simulator applies them directly.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::magic;
use crate::statevector::{Control, Gate, GateKind, StateVector};
use crate::{Error, Result};

/// Total width (primary + ancilla) up to which gate-level oracles are assembled for simulation.
pub const MAX_ORACLE_WIDTH: usize = 22;

/// Largest cell count for which pairwise distinctness flags are assembled.
pub const MAX_DISTINCT_CELLS: usize = 3;

/// An ordered reversible circuit over `num_qubits` qubits.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GateList {
    gates: Vec<Gate>,
    num_qubits: usize,
    ancilla_range: Range<usize>,
}

impl GateList {
    pub fn new(num_qubits: usize) -> Self {
        GateList { gates: Vec::new(), num_qubits, ancilla_range: num_qubits..num_qubits }
    }

    pub fn from_gates(num_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut list = GateList::new(num_qubits);
        list.extend(gates)?;
        Ok(list)
    }

    pub fn with_ancillas(mut self, range: Range<usize>) -> Result<Self> {
        if range.end > self.num_qubits || range.start > range.end {
            return Err(Error::Domain(format!(
                "ancilla range {range:?} outside {} qubits",
                self.num_qubits
            )));
        }
        self.ancilla_range = range;
        Ok(self)
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        gates.into_iter().try_for_each(|g| self.push(g))
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn ancilla_range(&self) -> Range<usize> {
        self.ancilla_range.clone()
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Every gate is self-inverse, so the inverse circuit is the reversed sequence.
    pub fn inverse(&self) -> GateList {
        GateList {
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
            num_qubits: self.num_qubits,
            ancilla_range: self.ancilla_range.clone(),
        }
    }

    /// Embeds the circuit in a wider register; extra qubits are left untouched.
    pub fn widen(&self, num_qubits: usize) -> Result<GateList> {
        if num_qubits < self.num_qubits {
            return Err(Error::WidthMismatch { expected: self.num_qubits, found: num_qubits });
        }
        Ok(GateList { num_qubits, ..self.clone() })
    }

    pub fn multi_controlled_count(&self) -> usize {
        self.gates.iter().filter(|g| g.kind.is_multi_controlled()).count()
    }

    /// Evaluates the circuit on a computational basis state without a statevector.
    ///
    /// Returns the output basis index and the accumulated sign. Fails on Hadamard gates,
    /// which do not map basis states to basis states.
    pub fn apply_to_basis(&self, index: usize) -> Result<(usize, i8)> {
        let mut state = index;
        let mut sign = 1i8;
        for gate in &self.gates {
            let (mask, value) = gate.control_mask();
            if state & mask != value {
                continue;
            }
            let bit = 1usize << gate.target;
            match gate.kind {
                GateKind::PauliX | GateKind::MultiControlledX => state ^= bit,
                GateKind::PauliZ | GateKind::MultiControlledZ => {
                    if state & bit != 0 {
                        sign = -sign;
                    }
                }
                GateKind::Hadamard => {
                    return Err(Error::InvalidGate(
                        "Hadamard has no basis-state evaluation".into(),
                    ))
                }
            }
        }
        Ok((state, sign))
    }

    /// Serializes to the plain-text netlist: a `qubits N ancillas A..B` header, then
    /// one `KIND target [q± ...]` line per gate.
    pub fn to_netlist(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for GateList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "qubits {} ancillas {}..{}",
            self.num_qubits, self.ancilla_range.start, self.ancilla_range.end
        )?;
        for g in &self.gates {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::Parse(format!("line {line}: expected integer, found `{tok}`")))
}

impl FromStr for GateList {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (_, header) = lines.next().ok_or_else(|| Error::Parse("empty netlist".into()))?;
        let head: Vec<&str> = header.split_whitespace().collect();
        let (qubits, anc) = match head.as_slice() {
            ["qubits", q, "ancillas", r] => (*q, *r),
            _ => return Err(Error::Parse(format!("line 1: bad header `{header}`"))),
        };
        let num_qubits = parse_usize(qubits, 1)?;
        let (start, end) = anc
            .split_once("..")
            .ok_or_else(|| Error::Parse(format!("line 1: bad ancilla range `{anc}`")))?;
        let range = parse_usize(start, 1)?..parse_usize(end, 1)?;

        let mut list = GateList::new(num_qubits).with_ancillas(range)?;
        for (n, line) in lines {
            let mut toks = line.split_whitespace();
            let kind = toks.next().and_then(GateKind::from_mnemonic).ok_or_else(|| {
                Error::Parse(format!("line {n}: unknown gate in `{line}`"))
            })?;
            let target = parse_usize(
                toks.next().ok_or_else(|| Error::Parse(format!("line {n}: missing target")))?,
                n,
            )?;
            let controls = toks
                .map(|t| {
                    let (q, pol) = t.split_at(t.len().saturating_sub(1));
                    let polarity = match pol {
                        "+" => true,
                        "-" => false,
                        _ => return Err(Error::Parse(format!("line {n}: bad control `{t}`"))),
                    };
                    Ok(Control { qubit: parse_usize(q, n)?, polarity })
                })
                .collect::<Result<Vec<_>>>()?;
            list.push(Gate { kind, target, controls })?;
        }
        Ok(list)
    }
}

/// Applies `gates` to `state` in order.
pub fn run_gatelist(state: &mut StateVector, gates: &GateList) -> Result<()> {
    if state.num_qubits() != gates.num_qubits() {
        return Err(Error::WidthMismatch {
            expected: gates.num_qubits(),
            found: state.num_qubits(),
        });
    }
    state.apply_gates(gates.gates())
}

/// Concatenates `compute ∥ mark ∥ compute⁻¹`.
pub fn with_uncompute(compute: &GateList, mark: &GateList) -> Result<GateList> {
    if compute.num_qubits() != mark.num_qubits() {
        return Err(Error::WidthMismatch {
            expected: compute.num_qubits(),
            found: mark.num_qubits(),
        });
    }
    let ranges = [compute.ancilla_range(), mark.ancilla_range()];
    let nonempty: Vec<_> = ranges.iter().filter(|r| !r.is_empty()).collect();
    let ancillas = match nonempty.as_slice() {
        [] => compute.ancilla_range(),
        rs => {
            rs.iter().map(|r| r.start).min().unwrap()..rs.iter().map(|r| r.end).max().unwrap()
        }
    };
    let mut out = GateList::new(compute.num_qubits()).with_ancillas(ancillas)?;
    out.gates.extend(compute.gates.iter().cloned());
    out.gates.extend(mark.gates.iter().cloned());
    out.gates.extend(compute.inverse().gates);
    Ok(out)
}

fn controlled_x(controls: &[usize], target: usize) -> Gate {
    if controls.is_empty() {
        Gate::x(target)
    } else {
        Gate::mcx(controls.iter().map(|&q| Control::on(q)).collect::<Vec<_>>(), target)
    }
}

/// Appends `b ← (a + b) mod 2^|b|` as a ripple of majority carries.
///
/// `a` may be narrower than `b` (implicit zero extension). `carries` must hold at least
/// `b.len() - 1` zeroed qubits and is returned to zero.
fn append_ripple_add(gates: &mut Vec<Gate>, a: &[usize], b: &[usize], carries: &[usize]) {
    let width = b.len();
    assert!(a.len() <= width && carries.len() + 1 >= width);
    let carry_in = |i: usize| (i > 0).then(|| carries[i - 1]);

    // c_{i+1} = a_i b_i ⊕ a_i c_i ⊕ b_i c_i, applied into a zeroed ancilla.
    let majority = |gates: &mut Vec<Gate>, i: usize| {
        let out = carries[i];
        if let Some(&ai) = a.get(i) {
            gates.push(controlled_x(&[ai, b[i]], out));
            if let Some(ci) = carry_in(i) {
                gates.push(controlled_x(&[ai, ci], out));
            }
        }
        if let Some(ci) = carry_in(i) {
            gates.push(controlled_x(&[b[i], ci], out));
        }
    };
    let sum_bit = |gates: &mut Vec<Gate>, i: usize| {
        if let Some(&ai) = a.get(i) {
            gates.push(Gate::cx(ai, b[i]));
        }
        if let Some(ci) = carry_in(i) {
            gates.push(Gate::cx(ci, b[i]));
        }
    };

    for i in 0..width.saturating_sub(1) {
        majority(gates, i);
    }
    sum_bit(gates, width - 1);
    for i in (0..width.saturating_sub(1)).rev() {
        majority(gates, i);
        sum_bit(gates, i);
    }
}

/// Appends `reg ← (reg + constant) mod 2^|reg|`, one cascaded increment per set bit.
fn append_add_constant(gates: &mut Vec<Gate>, reg: &[usize], constant: u64) {
    for j in (0..reg.len()).filter(|j| constant >> j & 1 == 1) {
        for t in (j..reg.len()).rev() {
            gates.push(controlled_x(&reg[j..t], reg[t]));
        }
    }
}

/// Appends a flip of `flag` conditioned on `reg` holding `constant`, with the zero bits
/// X-conjugated around an all-positive multi-controlled X.
fn append_equality_flag(gates: &mut Vec<Gate>, reg: &[usize], constant: u64, flag: usize) {
    let zeros: Vec<Gate> = reg
        .iter()
        .enumerate()
        .filter(|(i, _)| constant >> i & 1 == 0)
        .map(|(_, &q)| Gate::x(q))
        .collect();
    gates.extend(zeros.iter().cloned());
    gates.push(controlled_x(reg, flag));
    gates.extend(zeros);
}

fn check_width_arg(width: usize, max: usize) -> Result<()> {
    if width == 0 || width > max {
        return Err(Error::Domain(format!("register width {width} outside 1..={max}")));
    }
    Ok(())
}

fn check_constant(width: usize, constant: u64) -> Result<()> {
    if constant >> width != 0 {
        return Err(Error::Domain(format!(
            "constant {constant} does not fit in {width} bits"
        )));
    }
    Ok(())
}

/// Qubit ranges `(a, b, carries)` used by [`build_adder`] for `width`.
pub fn adder_registers(width: usize) -> (Range<usize>, Range<usize>, Range<usize>) {
    (0..width, width..2 * width, 2 * width..3 * width - 1)
}

/// Ripple-carry adder mapping `|a⟩|b⟩|0⟩ → |a⟩|(a+b) mod 2^w⟩|0⟩`.
///
/// Layout from [`adder_registers`]: `a` on qubits `0..w`, `b` on `w..2w`, and `w-1`
/// carry ancillas after that.
pub fn build_adder(width: usize) -> Result<GateList> {
    check_width_arg(width, 8)?;
    let (a, b, carries) = adder_registers(width);
    let a: Vec<usize> = a.collect();
    let b: Vec<usize> = b.collect();
    let c: Vec<usize> = carries.clone().collect();
    let mut gates = Vec::new();
    append_ripple_add(&mut gates, &a, &b, &c);
    GateList::from_gates(3 * width - 1, gates)?.with_ancillas(carries)
}

/// `b ← (b + constant) mod 2^width` on qubits `0..width`; no ancillas.
pub fn build_add_constant(width: usize, constant: u64) -> Result<GateList> {
    check_width_arg(width, 16)?;
    check_constant(width, constant)?;
    let reg: Vec<usize> = (0..width).collect();
    let mut gates = Vec::new();
    append_add_constant(&mut gates, &reg, constant);
    GateList::from_gates(width, gates)
}

/// Flips the flag qubit `width` iff qubits `0..width` hold `constant`.
pub fn build_equality_flag(width: usize, constant: u64) -> Result<GateList> {
    check_width_arg(width, 16)?;
    check_constant(width, constant)?;
    let reg: Vec<usize> = (0..width).collect();
    let mut gates = Vec::new();
    append_equality_flag(&mut gates, &reg, constant, width);
    GateList::from_gates(width + 1, gates)?.with_ancillas(width..width + 1)
}

/// Phase oracle on `num_qubits` qubits negating exactly `|marked_index⟩`.
pub fn assemble_index_oracle(num_qubits: usize, marked_index: usize) -> Result<GateList> {
    check_width_arg(num_qubits, 12)?;
    if marked_index >> num_qubits != 0 {
        return Err(Error::Domain(format!(
            "index {marked_index} out of range for {num_qubits} qubits"
        )));
    }
    let zeros: Vec<Gate> = (0..num_qubits)
        .filter(|q| marked_index >> q & 1 == 0)
        .map(Gate::x)
        .collect();
    let top = num_qubits - 1;
    let flip = if top == 0 {
        Gate::z(0)
    } else {
        Gate::mcz((0..top).map(Control::on).collect::<Vec<_>>(), top)
    };
    let mut gates = zeros.clone();
    gates.push(flip);
    gates.extend(zeros);
    GateList::from_gates(num_qubits, gates)
}

fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

fn bits_to_hold(value: u64) -> usize {
    ((u64::BITS - value.leading_zeros()) as usize).max(1)
}

/// Qubit allocation for a cell-encoded grid and the ancillas an oracle adds to it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegisterLayout {
    pub cell_count: usize,
    pub bits_per_cell: usize,
    pub cell_offsets: Vec<usize>,
    pub ancilla_offsets: BTreeMap<String, Range<usize>>,
}

impl RegisterLayout {
    /// Layout for an n×n grid: n² cells of ⌈log₂ n²⌉ bits each.
    pub fn for_grid(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("grid order {n} must be at least 2")));
        }
        let cells = n * n;
        RegisterLayout::new(cells, ceil_log2(cells))
    }

    /// Arbitrary `cell_count` cells of `bits_per_cell` bits, packed from qubit 0.
    pub fn new(cell_count: usize, bits_per_cell: usize) -> Result<Self> {
        if cell_count == 0 {
            return Err(Error::Domain("layout needs at least one cell".into()));
        }
        check_width_arg(bits_per_cell, 16)?;
        Ok(RegisterLayout {
            cell_count,
            bits_per_cell,
            cell_offsets: (0..cell_count).map(|c| c * bits_per_cell).collect(),
            ancilla_offsets: BTreeMap::new(),
        })
    }

    pub fn primary_width(&self) -> usize {
        self.cell_count * self.bits_per_cell
    }

    pub fn total_width(&self) -> usize {
        self.ancilla_offsets
            .values()
            .map(|r| r.end)
            .max()
            .unwrap_or(0)
            .max(self.primary_width())
    }

    pub fn ancilla_width(&self) -> usize {
        self.total_width() - self.primary_width()
    }

    pub fn cell_qubits(&self, cell: usize) -> Vec<usize> {
        let start = self.cell_offsets[cell];
        (start..start + self.bits_per_cell).collect()
    }

    pub fn ancilla(&self, name: &str) -> Option<Range<usize>> {
        self.ancilla_offsets.get(name).cloned()
    }

    /// Packs a cell assignment into a basis index (cell `c` at its offset, little-endian).
    pub fn encode(&self, cells: &[u64]) -> usize {
        cells
            .iter()
            .zip(&self.cell_offsets)
            .fold(0, |acc, (&v, &off)| acc | (v as usize) << off)
    }

    /// Inverse of [`RegisterLayout::encode`] on the primary bits of `index`.
    pub fn decode(&self, index: usize) -> Vec<u64> {
        let mask = (1usize << self.bits_per_cell) - 1;
        self.cell_offsets.iter().map(|&off| (index >> off & mask) as u64).collect()
    }

    fn allocate(&mut self, name: String, width: usize) -> Range<usize> {
        let start = self.total_width();
        let range = start..start + width;
        self.ancilla_offsets.insert(name, range.clone());
        range
    }

    /// Largest value a cell register can hold.
    pub fn max_cell_value(&self) -> u64 {
        (1u64 << self.bits_per_cell) - 1
    }
}

/// Constraint set checked by a gate-level oracle: each group of cells must sum to `target`,
/// optionally with all cells pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumConstraint {
    pub groups: Vec<Vec<usize>>,
    pub target: u64,
    pub distinct: bool,
}

impl SumConstraint {
    pub fn new(groups: Vec<Vec<usize>>, target: u64) -> Self {
        SumConstraint { groups, target, distinct: false }
    }

    pub fn with_distinct(mut self) -> Self {
        self.distinct = true;
        self
    }

    /// Classical predicate the assembled oracle must reproduce.
    pub fn holds(&self, cells: &[u64]) -> bool {
        let sums_ok = self
            .groups
            .iter()
            .all(|g| g.iter().map(|&c| cells[c]).sum::<u64>() == self.target);
        let distinct_ok = !self.distinct || {
            let mut seen = cells.to_vec();
            seen.sort_unstable();
            seen.windows(2).all(|w| w[0] != w[1])
        };
        sums_ok && distinct_ok
    }

    fn validate(&self, layout: &RegisterLayout) -> Result<()> {
        if self.groups.is_empty() || self.groups.iter().any(|g| g.is_empty()) {
            return Err(Error::Domain("sum oracle needs nonempty groups".into()));
        }
        if let Some(&c) = self.groups.iter().flatten().find(|&&c| c >= layout.cell_count) {
            return Err(Error::Domain(format!(
                "cell {c} outside a {}-cell layout",
                layout.cell_count
            )));
        }
        Ok(())
    }

    /// Sum register width for `group_len` cells: wide enough that neither the largest
    /// encodable sum nor the target wraps.
    fn sum_width(&self, layout: &RegisterLayout, group_len: usize) -> usize {
        bits_to_hold((group_len as u64 * layout.max_cell_value()).max(self.target))
    }
}

/// Allocates the ancillas used by the oracle for `constraint` on top of `layout`:
/// a shared carry register, one sum register and one flag per group, and one
/// inequality flag per cell pair when distinctness is requested.
pub fn constraint_oracle_layout(
    layout: &RegisterLayout,
    constraint: &SumConstraint,
) -> Result<RegisterLayout> {
    constraint.validate(layout)?;
    let mut out = layout.clone();
    out.ancilla_offsets.clear();
    let widest = constraint
        .groups
        .iter()
        .map(|g| constraint.sum_width(layout, g.len()))
        .max()
        .unwrap_or(1);
    if widest > 1 {
        out.allocate("carry".into(), widest - 1);
    }
    for (g, group) in constraint.groups.iter().enumerate() {
        let width = constraint.sum_width(layout, group.len());
        out.allocate(format!("sum{g}"), width);
    }
    for g in 0..constraint.groups.len() {
        out.allocate(format!("flag{g}"), 1);
    }
    if constraint.distinct {
        for i in 0..layout.cell_count {
            for j in i + 1..layout.cell_count {
                out.allocate(format!("neq{i}_{j}"), 1);
            }
        }
    }
    Ok(out)
}

/// Builds the oracle without any width cap. Used for resource estimation at scale.
fn build_constraint_oracle(
    layout: &RegisterLayout,
    constraint: &SumConstraint,
) -> Result<(GateList, RegisterLayout)> {
    let full = constraint_oracle_layout(layout, constraint)?;
    let width = full.total_width();
    let carries: Vec<usize> = full.ancilla("carry").map(|r| r.collect()).unwrap_or_default();

    let mut compute = Vec::new();
    let mut flags = Vec::new();
    for (g, group) in constraint.groups.iter().enumerate() {
        let sum: Vec<usize> = full.ancilla(&format!("sum{g}")).unwrap().collect();
        for &cell in group {
            append_ripple_add(&mut compute, &layout.cell_qubits(cell), &sum, &carries);
        }
        let flag = full.ancilla(&format!("flag{g}")).unwrap().start;
        append_equality_flag(&mut compute, &sum, constraint.target, flag);
        flags.push(flag);
    }
    if constraint.distinct {
        for i in 0..layout.cell_count {
            for j in i + 1..layout.cell_count {
                let flag = full.ancilla(&format!("neq{i}_{j}")).unwrap().start;
                let (qi, qj) = (layout.cell_qubits(i), layout.cell_qubits(j));
                // cell_j ^= cell_i is zero iff the cells are equal.
                let xor: Vec<Gate> = qi.iter().zip(&qj).map(|(&a, &b)| Gate::cx(a, b)).collect();
                compute.extend(xor.iter().cloned());
                compute.push(Gate::x(flag));
                compute.push(Gate::mcx(
                    qj.iter().map(|&q| Control::off(q)).collect::<Vec<_>>(),
                    flag,
                ));
                compute.extend(xor);
                flags.push(flag);
            }
        }
    }

    let ancillas = layout.primary_width()..width;
    let compute = GateList::from_gates(width, compute)?.with_ancillas(ancillas.clone())?;
    let (&last, rest) = flags.split_last().expect("at least one group");
    let mark_gate = if rest.is_empty() {
        Gate::z(last)
    } else {
        Gate::mcz(rest.iter().map(|&q| Control::on(q)).collect::<Vec<_>>(), last)
    };
    let mark = GateList::from_gates(width, vec![mark_gate])?.with_ancillas(ancillas)?;
    Ok((with_uncompute(&compute, &mark)?, full))
}

/// Gate-level phase oracle negating basis states whose every group of cells sums to `target`.
pub fn assemble_sum_oracle(
    layout: &RegisterLayout,
    groups: &[Vec<usize>],
    target: u64,
) -> Result<GateList> {
    assemble_constraint_oracle(layout, &SumConstraint::new(groups.to_vec(), target))
}

/// Gate-level phase oracle for a [`SumConstraint`], capped at [`MAX_ORACLE_WIDTH`] qubits.
pub fn assemble_constraint_oracle(
    layout: &RegisterLayout,
    constraint: &SumConstraint,
) -> Result<GateList> {
    if constraint.distinct && layout.cell_count > MAX_DISTINCT_CELLS {
        return Err(Error::Capacity(format!(
            "pairwise distinctness flags are assembled for at most {MAX_DISTINCT_CELLS} cells"
        )));
    }
    let width = constraint_oracle_layout(layout, constraint)?.total_width();
    if width > MAX_ORACLE_WIDTH {
        return Err(Error::Capacity(format!(
            "oracle needs {width} qubits; gate-level assembly is capped at {MAX_ORACLE_WIDTH}"
        )));
    }
    Ok(build_constraint_oracle(layout, constraint)?.0)
}

/// Qubit and gate budget of the full magic-square sum oracle for an n×n grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResourceEstimate {
    pub n: usize,
    pub primary_qubits: usize,
    pub ancilla_qubits: usize,
    pub gate_count: usize,
    pub multi_controlled_count: usize,
    /// Gate count after expanding every k-control gate (k ≥ 3) into 2k−3 Toffolis.
    pub decomposed_gate_count: usize,
    pub notes: Vec<String>,
}

impl fmt::Display for ResourceEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Resource estimate for the {0}x{0} constraint oracle", self.n)?;
        writeln!(f, "  primary qubits         : {}", self.primary_qubits)?;
        writeln!(f, "  ancilla qubits         : {}", self.ancilla_qubits)?;
        writeln!(f, "  total qubits           : {}", self.primary_qubits + self.ancilla_qubits)?;
        writeln!(f, "  gates (native)         : {}", self.gate_count)?;
        writeln!(f, "  multi-controlled gates : {}", self.multi_controlled_count)?;
        writeln!(f, "  gates (decomposed)     : {}", self.decomposed_gate_count)?;
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        Ok(())
    }
}

/// Counts qubits and gates for the sum oracle over all rows, columns and both diagonals
/// of an n×n grid. The circuit is assembled but never simulated.
pub fn oracle_resources(n: usize) -> Result<ResourceEstimate> {
    if !(2..=10).contains(&n) {
        return Err(Error::Domain(format!("resource estimation covers 2 ≤ n ≤ 10, got {n}")));
    }
    let layout = RegisterLayout::for_grid(n)?;
    let constraint = SumConstraint::new(magic::lines(n), magic::magic_constant(n)?);
    let (gates, full) = build_constraint_oracle(&layout, &constraint)?;

    let decomposed = gates
        .gates()
        .iter()
        .map(|g| match g.controls.len() {
            0..=2 => 1,
            k => 2 * k - 3,
        })
        .sum();
    let primary = layout.primary_width();
    let mut notes = vec![
        format!(
            "{} line-sum registers ({} rows, {} columns, 2 diagonals) with one equality flag each",
            2 * n + 2,
            n,
            n
        ),
        "element uniqueness is carried by the permutation encoding, not by extra flags".into(),
    ];
    if n == 3 {
        notes.push(format!(
            "the primary register alone is {primary} qubits; estimates of about 30 qubits for \
             the 3x3 oracle do not match this per-cell binary encoding"
        ));
    }
    Ok(ResourceEstimate {
        n,
        primary_qubits: primary,
        ancilla_qubits: full.ancilla_width(),
        gate_count: gates.len(),
        multi_controlled_count: gates.multi_controlled_count(),
        decomposed_gate_count: decomposed,
        notes,
    })
}

/// Three-qubit demonstration circuit: H·H on q0 and q1, H·Z·H on q2. Sends `|000⟩`
/// to `|100⟩` with certainty.
pub fn demo_circuit() -> GateList {
    GateList::from_gates(
        3,
        vec![
            Gate::h(0),
            Gate::h(0),
            Gate::h(1),
            Gate::h(1),
            Gate::h(2),
            Gate::z(2),
            Gate::h(2),
        ],
    )
    .expect("static circuit is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevector::InitMode;

    fn adder_input(width: usize, a: usize, b: usize) -> usize {
        a | b << width
    }

    #[test]
    fn adder_examples() {
        let add = build_adder(4).unwrap();
        let (out, sign) = add.apply_to_basis(adder_input(4, 3, 5)).unwrap();
        assert_eq!((out, sign), (adder_input(4, 3, 8), 1));
        let (out, _) = add.apply_to_basis(adder_input(4, 15, 1)).unwrap();
        assert_eq!(out, adder_input(4, 15, 0));
    }

    #[test]
    fn adder_exhaustive_width_three() {
        let add = build_adder(3).unwrap();
        assert_eq!(add.num_qubits(), 8);
        assert_eq!(add.ancilla_range(), 6..8);
        for a in 0..8 {
            for b in 0..8 {
                let (out, sign) = add.apply_to_basis(adder_input(3, a, b)).unwrap();
                assert_eq!(out, adder_input(3, a, (a + b) % 8), "a={a} b={b}");
                assert_eq!(sign, 1);
            }
        }
    }

    #[test]
    fn adder_width_bounds() {
        assert!(build_adder(0).is_err());
        assert!(build_adder(9).is_err());
        let one = build_adder(1).unwrap();
        assert_eq!(one.num_qubits(), 2);
        for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert_eq!(one.apply_to_basis(a | b << 1).unwrap().0, a | ((a + b) % 2) << 1);
        }
    }

    #[test]
    fn add_constant_examples() {
        let id = build_add_constant(4, 0).unwrap();
        assert!(id.is_empty());
        let add5 = build_add_constant(3, 5).unwrap();
        assert_eq!(add5.apply_to_basis(6).unwrap(), (3, 1));
        assert!(build_add_constant(3, 8).is_err());
    }

    #[test]
    fn add_constant_exhaustive_width_four() {
        for c in 0..16u64 {
            let g = build_add_constant(4, c).unwrap();
            for b in 0..16usize {
                assert_eq!(g.apply_to_basis(b).unwrap(), ((b + c as usize) % 16, 1));
            }
        }
    }

    #[test]
    fn equality_flag_examples() {
        let eq = build_equality_flag(4, 15).unwrap();
        assert_eq!(eq.apply_to_basis(15).unwrap().0, 15 | 1 << 4);
        assert_eq!(eq.apply_to_basis(0).unwrap().0, 0);
        assert!(build_equality_flag(4, 16).is_err());
    }

    #[test]
    fn equality_flag_exhaustive_width_four() {
        for constant in 0..16u64 {
            let eq = build_equality_flag(4, constant).unwrap();
            for v in 0..16usize {
                let want = if v as u64 == constant { v | 1 << 4 } else { v };
                assert_eq!(eq.apply_to_basis(v).unwrap(), (want, 1));
            }
        }
    }

    #[test]
    fn uncompute_cases() {
        let add = build_adder(3).unwrap();
        let empty = GateList::new(add.num_qubits());
        let identity = with_uncompute(&add, &empty).unwrap();
        for i in 0..1 << add.num_qubits() {
            assert_eq!(identity.apply_to_basis(i).unwrap(), (i, 1));
        }

        // Adder plus a Z on an extra flag qubit: ancillas come back to zero.
        let wide = add.widen(9).unwrap();
        let mark = GateList::from_gates(9, vec![Gate::z(8)]).unwrap();
        let wrapped = with_uncompute(&wide, &mark).unwrap();
        for i in 0..1usize << 9 {
            if i & 0b1100_0000 != 0 {
                continue;
            }
            let (out, sign) = wrapped.apply_to_basis(i).unwrap();
            assert_eq!(out, i);
            assert_eq!(sign, if i >> 8 & 1 == 1 { -1 } else { 1 });
        }

        let only_mark = with_uncompute(&GateList::new(9), &mark).unwrap();
        assert_eq!(only_mark.gates(), mark.gates());

        assert!(matches!(
            with_uncompute(&add, &mark),
            Err(Error::WidthMismatch { .. })
        ));
    }

    #[test]
    fn index_oracle_examples() {
        let o = assemble_index_oracle(5, 11).unwrap();
        for i in 0..32 {
            assert_eq!(o.apply_to_basis(i).unwrap(), (i, if i == 11 { -1 } else { 1 }));
        }
        assert_eq!(assemble_index_oracle(1, 1).unwrap().gates(), &[Gate::z(0)]);
        let zero = assemble_index_oracle(2, 0).unwrap();
        assert_eq!(
            zero.gates(),
            &[
                Gate::x(0),
                Gate::x(1),
                Gate::mcz(vec![Control::on(0)], 1),
                Gate::x(0),
                Gate::x(1)
            ]
        );
        assert!(assemble_index_oracle(3, 8).is_err());
        assert!(assemble_index_oracle(13, 0).is_err());
    }

    #[test]
    fn sum_oracle_two_cells() {
        let layout = RegisterLayout::new(2, 2).unwrap();
        let oracle = assemble_sum_oracle(&layout, &[vec![0, 1]], 3).unwrap();
        let ancilla_mask = !((1usize << 4) - 1);
        let mut marked = Vec::new();
        for i in 0..16 {
            let (out, sign) = oracle.apply_to_basis(i).unwrap();
            assert_eq!(out & ancilla_mask, 0);
            assert_eq!(out, i);
            if sign == -1 {
                marked.push(layout.decode(i));
            }
        }
        assert_eq!(marked, vec![vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]]);
    }

    #[test]
    fn sum_oracle_zero_target_marks_all_zero() {
        let layout = RegisterLayout::new(2, 2).unwrap();
        let oracle = assemble_sum_oracle(&layout, &[vec![0, 1]], 0).unwrap();
        assert_eq!(oracle.apply_to_basis(0).unwrap(), (0, -1));
        assert_eq!(oracle.apply_to_basis(1).unwrap(), (1, 1));
    }

    #[test]
    fn sum_oracle_is_involution_on_statevector() {
        let layout = RegisterLayout::new(2, 2).unwrap();
        let oracle = assemble_sum_oracle(&layout, &[vec![0, 1]], 3).unwrap();
        let mut s = StateVector::init(oracle.num_qubits(), InitMode::ExactDomain(16)).unwrap();
        let before = s.clone();
        run_gatelist(&mut s, &oracle).unwrap();
        run_gatelist(&mut s, &oracle).unwrap();
        for (a, b) in s.amplitudes().iter().zip(before.amplitudes()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn sum_oracle_capacity_and_validation() {
        let layout = RegisterLayout::for_grid(3).unwrap();
        assert!(matches!(
            assemble_sum_oracle(&layout, &magic::lines(3), 15),
            Err(Error::Capacity(_))
        ));
        let small = RegisterLayout::new(2, 2).unwrap();
        assert!(assemble_sum_oracle(&small, &[], 1).is_err());
        assert!(assemble_sum_oracle(&small, &[vec![0, 2]], 1).is_err());
        let four = RegisterLayout::new(4, 1).unwrap();
        let c = SumConstraint::new(vec![vec![0, 1]], 1).with_distinct();
        assert!(matches!(assemble_constraint_oracle(&four, &c), Err(Error::Capacity(_))));
    }

    #[test]
    fn layout_accounting() {
        let l = RegisterLayout::for_grid(3).unwrap();
        assert_eq!((l.cell_count, l.bits_per_cell, l.primary_width()), (9, 4, 36));
        let small = RegisterLayout::new(2, 2).unwrap();
        let full = constraint_oracle_layout(&small, &SumConstraint::new(vec![vec![0, 1]], 3))
            .unwrap();
        assert_eq!(full.ancilla("carry"), Some(4..6));
        assert_eq!(full.ancilla("sum0"), Some(6..9));
        assert_eq!(full.ancilla("flag0"), Some(9..10));
        assert_eq!(full.total_width(), 10);
        assert_eq!(small.decode(small.encode(&[2, 3])), vec![2, 3]);
    }

    #[test]
    fn resource_examples() {
        let r3 = oracle_resources(3).unwrap();
        assert_eq!(r3.primary_qubits, 36);
        assert!(r3.notes.iter().any(|n| n.contains("30 qubits")));
        assert_eq!(oracle_resources(5).unwrap().primary_qubits, 125);
        let r2 = oracle_resources(2).unwrap();
        assert_eq!(r2.primary_qubits, 8);
        assert!(r2.gate_count > 0 && r2.decomposed_gate_count >= r2.gate_count);
        assert!(oracle_resources(1).is_err() && oracle_resources(11).is_err());
        // 8 sums of 6 bits, 5 carries, 8 flags.
        assert_eq!(r3.ancilla_qubits, 8 * 6 + 5 + 8);
    }

    #[test]
    fn run_gatelist_examples() {
        let mut s = StateVector::basis(3, 0).unwrap();
        run_gatelist(&mut s, &GateList::new(3)).unwrap();
        assert_eq!(s.amplitude(0).re, 1.0);

        let demo = demo_circuit();
        run_gatelist(&mut s, &demo).unwrap();
        assert!((s.amplitude(0b100).re - 1.0).abs() < 1e-12);

        let mut wrong = StateVector::basis(4, 0).unwrap();
        assert!(matches!(run_gatelist(&mut wrong, &demo), Err(Error::WidthMismatch { .. })));
    }

    #[test]
    fn netlist_format() {
        let eq = build_equality_flag(2, 1).unwrap();
        assert_eq!(eq.to_netlist(), "qubits 3 ancillas 2..3\nX 1\nMCX 2 0+ 1+\nX 1\n");
        assert_eq!(eq.to_netlist().parse::<GateList>().unwrap(), eq);
        assert!("qubits 2 ancillas 0..0\nY 0\n".parse::<GateList>().is_err());
        assert!("qubits 2 ancillas 0..0\nMCX 1 0*\n".parse::<GateList>().is_err());
        assert!("bogus".parse::<GateList>().is_err());
    }
}

//! Bipartition of `Z_n` against two circular orders.
//!
//! The blue order is `0, 1, ..., n−1`; the red order is a permutation
//! `a_0, ..., a_{n−1}`. We look for a split `{B, R}` such that
//!
//! * `{0, 1}` and every blue triple `{i, i+1, i+2}` (i ≠ 0) meet `R`, and
//! * `{a_0, a_1}` and every red triple `{a_i, a_{i+1}, a_{i+2}}` (i ≠ 0) meet `B`.
//!
//! Any longer circular run starting at index `i` contains the pair or triple
//! starting there, so this predicate covers runs of every size `≥ 3` (`≥ 2` at
//! index 0).
//!
//! The construction keeps one perfect or near-perfect matching from each
//! cycle, so every kept-edge component is a path or an even cycle, and
//! 2-colors the result. Odd `n` needs one or two vertices taken out first to
//! make room for the matchings.

use std::fmt;

use crate::error::{ensure, Error, Result};
use crate::hypergraph::VertexId;

/// The red cycle `a` of a two-cycle instance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoCycleInstance {
    a: Vec<usize>,
    pos: Vec<usize>,
}

impl TwoCycleInstance {
    pub fn new(a: Vec<usize>) -> Result<Self> {
        let n = a.len();
        ensure!(
            n >= 3,
            Parameter,
            "two-cycle instance needs n >= 3, got {n}"
        );
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in a.iter().enumerate() {
            ensure!(v < n, Parameter, "entry {v} out of range for n = {n}");
            ensure!(pos[v] == usize::MAX, Parameter, "entry {v} repeated");
            pos[v] = i;
        }
        Ok(Self { a, pos })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    /// `a_i`, index taken mod n.
    pub fn at(&self, i: usize) -> usize {
        self.a[i % self.a.len()]
    }

    /// The index `i` with `a_i = v`.
    pub fn position(&self, v: VertexId) -> usize {
        self.pos[v]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Blue,
    Red,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Blue => Side::Red,
            Side::Red => Side::Blue,
        }
    }
}

/// A split of `Z_n` into `B` (blue) and `R` (red).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BrPartition {
    side: Vec<Side>,
}

impl BrPartition {
    pub fn from_sides(side: Vec<Side>) -> Self {
        Self { side }
    }

    /// Builds the partition with `blue` as `B` and everything else in `R`.
    pub fn from_blue(n: usize, blue: &[VertexId]) -> Result<Self> {
        let mut side = vec![Side::Red; n];
        for &v in blue {
            ensure!(v < n, Validation, "vertex {v} out of range for n = {n}");
            ensure!(side[v] == Side::Red, Validation, "vertex {v} listed twice");
            side[v] = Side::Blue;
        }
        Ok(Self { side })
    }

    /// Builds the partition from explicit `B` and `R` lists, which must split `0..n`.
    pub fn from_sets(n: usize, blue: &[VertexId], red: &[VertexId]) -> Result<Self> {
        let mut side: Vec<Option<Side>> = vec![None; n];
        for (set, s) in [(blue, Side::Blue), (red, Side::Red)] {
            for &v in set {
                ensure!(v < n, Validation, "vertex {v} out of range for n = {n}");
                ensure!(side[v].is_none(), Validation, "vertex {v} appears twice");
                side[v] = Some(s);
            }
        }
        let side = side
            .into_iter()
            .enumerate()
            .map(|(v, s)| {
                s.ok_or_else(|| Error::Validation(format!("vertex {v} is in neither B nor R")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { side })
    }

    pub fn n(&self) -> usize {
        self.side.len()
    }

    pub fn side(&self, v: VertexId) -> Side {
        self.side[v]
    }

    pub fn sides(&self) -> &[Side] {
        &self.side
    }

    pub fn blue(&self) -> Vec<VertexId> {
        self.members(Side::Blue)
    }

    pub fn red(&self) -> Vec<VertexId> {
        self.members(Side::Red)
    }

    fn members(&self, s: Side) -> Vec<VertexId> {
        (0..self.side.len())
            .filter(|&v| self.side[v] == s)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BrVerdict {
    Ok,
    /// `set` is a constraint set lying entirely on `side`.
    Violation {
        side: Side,
        set: Vec<VertexId>,
    },
}

impl BrVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, BrVerdict::Ok)
    }
}

/// Checks the pair-at-index-0, triples-elsewhere predicate for both colors,
/// blue first, reporting the first violated set.
pub fn check_br_constraints(inst: &TwoCycleInstance, p: &BrPartition) -> Result<BrVerdict> {
    ensure!(
        p.n() == inst.n(),
        Validation,
        "partition covers {} vertices, instance has {}",
        p.n(),
        inst.n()
    );
    Ok(
        first_violation(inst, &p.side).map_or(BrVerdict::Ok, |(side, set)| BrVerdict::Violation {
            side,
            set,
        }),
    )
}

fn first_violation(inst: &TwoCycleInstance, side: &[Side]) -> Option<(Side, Vec<VertexId>)> {
    let n = inst.n();
    let blue = |v: usize| side[v % n] == Side::Blue;
    if blue(0) && blue(1) {
        return Some((Side::Blue, vec![0, 1]));
    }
    for i in 1..n {
        if blue(i) && blue(i + 1) && blue(i + 2) {
            return Some((Side::Blue, vec![i % n, (i + 1) % n, (i + 2) % n]));
        }
    }
    let red = |i: usize| side[inst.at(i)] == Side::Red;
    if red(0) && red(1) {
        return Some((Side::Red, vec![inst.at(0), inst.at(1)]));
    }
    for i in 1..n {
        if red(i) && red(i + 1) && red(i + 2) {
            return Some((Side::Red, vec![inst.at(i), inst.at(i + 1), inst.at(i + 2)]));
        }
    }
    None
}

/// Which branch of the construction produced a partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// `n` even: both cycles keep a perfect matching.
    Even,
    /// `n` odd, some even `v ≥ 2` sits at an even red index `≥ 2`; `v` is removed.
    OddDNonempty,
    /// `n` odd, pivot pair `k = a_x`, `k+1 = a_y` removed, `x < y`.
    OddPivotXY,
    /// As [`CaseTag::OddPivotXY`] with `x > y`.
    OddPivotYX,
    /// `n ≤ 9` residue with neither of the above; solved by exhaustive search.
    OddSmallCase,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Even => "even",
            CaseTag::OddDNonempty => "odd-D-nonempty",
            CaseTag::OddPivotXY => "odd-pivot-xy",
            CaseTag::OddPivotYX => "odd-pivot-yx",
            CaseTag::OddSmallCase => "odd-smallcase",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pivot {
    /// `v = a_j` was removed; `u = a_{j−1}` was forced into `B`.
    Removed { v: VertexId, j: usize, u: VertexId },
    /// `k = a_x` (goes to `B`) and `k+1 = a_y` (goes to `R`) were removed.
    Pair { k: VertexId, x: usize, y: usize },
}

/// A connected component of the kept-edge graph with its 2-coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<VertexId>,
    pub sides: Vec<Side>,
    pub cycle: bool,
}

/// Intermediate structures of one run of [`partition_two_cycles`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTrace {
    pub case: CaseTag,
    pub kept_blue: Vec<(VertexId, VertexId)>,
    pub kept_red: Vec<(VertexId, VertexId)>,
    pub removed: Vec<VertexId>,
    pub pivot: Option<Pivot>,
    pub components: Vec<Component>,
}

/// Largest `n` at which the pivot-free odd residue can occur.
const SMALL_CASE_MAX_N: usize = 9;

/// Computes a partition passing [`check_br_constraints`], with a trace of the
/// branch taken. Runs in O(n) except for the small residue case (n ≤ 9).
pub fn partition_two_cycles(inst: &TwoCycleInstance) -> Result<(BrPartition, PartitionTrace)> {
    let n = inst.n();
    let (partition, trace) = if n.is_multiple_of(2) {
        even_case(inst)?
    } else if let Some(v) = min_even_fixed(inst) {
        removal_case(inst, v)?
    } else if let Some(k) = smallest_pivot(inst) {
        pivot_case(inst, k)?
    } else {
        small_case(inst)?
    };
    if let Some((side, set)) = first_violation(inst, &partition.side) {
        return Err(Error::AlgorithmInvariant(format!(
            "{} case produced a partition with {set:?} inside {side:?}",
            trace.case
        )));
    }
    Ok((partition, trace))
}

fn even_case(inst: &TwoCycleInstance) -> Result<(BrPartition, PartitionTrace)> {
    let n = inst.n();
    let blue: Vec<_> = (0..n / 2).map(|t| (2 * t, 2 * t + 1)).collect();
    let red: Vec<_> = (0..n / 2)
        .map(|t| (inst.at(2 * t), inst.at(2 * t + 1)))
        .collect();
    let colored = color_kept_graph(n, &blue, &red, &[], None)?;
    let side = colored
        .sides
        .into_iter()
        .map(|s| s.expect("nothing removed"))
        .collect();
    Ok((
        BrPartition { side },
        PartitionTrace {
            case: CaseTag::Even,
            kept_blue: blue,
            kept_red: red,
            removed: Vec::new(),
            pivot: None,
            components: colored.components,
        },
    ))
}

/// Smallest even `v ≥ 2` sitting at an even red index `≥ 2`.
fn min_even_fixed(inst: &TwoCycleInstance) -> Option<VertexId> {
    (2..inst.n()).step_by(2).find(|&v| {
        let j = inst.position(v);
        j >= 2 && j.is_multiple_of(2)
    })
}

fn removal_case(inst: &TwoCycleInstance, v: VertexId) -> Result<(BrPartition, PartitionTrace)> {
    let n = inst.n();
    let half = n / 2;
    let j = inst.position(v);
    let u = inst.at(j - 1);
    // Unique perfect matchings of the two paths left after deleting v.
    let blue: Vec<_> = (0..half)
        .map(|s| ((v + 1 + 2 * s) % n, (v + 2 + 2 * s) % n))
        .collect();
    let red: Vec<_> = (0..half)
        .map(|s| (inst.at(j + 1 + 2 * s), inst.at(j + 2 + 2 * s)))
        .collect();

    require_edge(&blue, (0, 1), "blue {0,1}")?;
    require_edge(&red, (inst.at(0), inst.at(1)), "red {a0,a1}")?;
    require_edge(
        &red,
        (inst.at(j + 1), inst.at(j + 2)),
        "red {a_{j+1},a_{j+2}}",
    )?;

    let colored = color_kept_graph(n, &blue, &red, &[v], Some(u))?;
    let mut side = colored.sides;
    side[v] = Some(Side::Red);
    let side = side
        .into_iter()
        .map(|s| s.expect("every vertex placed"))
        .collect();
    Ok((
        BrPartition { side },
        PartitionTrace {
            case: CaseTag::OddDNonempty,
            kept_blue: blue,
            kept_red: red,
            removed: vec![v],
            pivot: Some(Pivot::Removed { v, j, u }),
            components: colored.components,
        },
    ))
}

/// Smallest even `k ∈ [2, n−3]` outside `{a_0, a_1}` whose successor sits at
/// an even red index `≥ 2`.
fn smallest_pivot(inst: &TwoCycleInstance) -> Option<VertexId> {
    let n = inst.n();
    (2..n.saturating_sub(2)).step_by(2).find(|&k| {
        let y = inst.position(k + 1);
        k != inst.at(0) && k != inst.at(1) && y >= 2 && y.is_multiple_of(2)
    })
}

fn pivot_case(inst: &TwoCycleInstance, k: VertexId) -> Result<(BrPartition, PartitionTrace)> {
    let n = inst.n();
    let x = inst.position(k);
    let y = inst.position(k + 1);
    ensure!(
        x % 2 == 1 && y.is_multiple_of(2) && y >= 2,
        AlgorithmInvariant,
        "pivot {k} at red index {x}, successor at {y}: expected odd and even"
    );

    // Blue path k+2, k+3, ..., k−1 (2ℓ−1 vertices): leave k+2, next to the
    // removed k+1 ∈ R, unmatched and pair the rest.
    let blue: Vec<_> = (0..(n - 3) / 2)
        .map(|s| ((k + 3 + 2 * s) % n, (k + 4 + 2 * s) % n))
        .collect();

    // Red cycle minus positions x and y splits into an even segment, matched
    // perfectly from its start, and an odd segment with one vertex left over.
    // With x < y the odd segment runs y+1 .. x−1 through index 0 and drops its
    // last vertex; with x > y it runs x+1 .. y−1 and drops its first, which is
    // adjacent to a_x ∈ B.
    let (case, even_seg, odd_seg_start, odd_len) = if x < y {
        (
            CaseTag::OddPivotXY,
            (x + 1, y - x - 1),
            y + 1,
            n - (y - x) - 1,
        )
    } else {
        (
            CaseTag::OddPivotYX,
            (y + 1, x - y - 1),
            x + 2,
            n - (x - y) - 2,
        )
    };
    let mut red: Vec<_> = (0..even_seg.1 / 2)
        .map(|s| (inst.at(even_seg.0 + 2 * s), inst.at(even_seg.0 + 2 * s + 1)))
        .collect();
    red.extend((0..odd_len / 2).map(|s| {
        (
            inst.at(odd_seg_start + 2 * s),
            inst.at(odd_seg_start + 2 * s + 1),
        )
    }));

    require_edge(&blue, (0, 1), "blue {0,1}")?;
    require_edge(&blue, (k - 2, k - 1), "blue {k-2,k-1}")?;
    require_edge(&red, (inst.at(0), inst.at(1)), "red {a0,a1}")?;
    if inst.at(y + 1) != k {
        require_edge(
            &red,
            (inst.at(y + 1), inst.at(y + 2)),
            "red {a_{y+1},a_{y+2}}",
        )?;
    }

    let forced = (y - 1 != x).then(|| inst.at(y - 1));
    let colored = color_kept_graph(n, &blue, &red, &[k, k + 1], forced)?;
    let mut side = colored.sides;
    side[k] = Some(Side::Blue);
    side[k + 1] = Some(Side::Red);
    let side = side
        .into_iter()
        .map(|s| s.expect("every vertex placed"))
        .collect();
    Ok((
        BrPartition { side },
        PartitionTrace {
            case,
            kept_blue: blue,
            kept_red: red,
            removed: vec![k, k + 1],
            pivot: Some(Pivot::Pair { k, x, y }),
            components: colored.components,
        },
    ))
}

fn small_case(inst: &TwoCycleInstance) -> Result<(BrPartition, PartitionTrace)> {
    let n = inst.n();
    ensure!(
        n <= SMALL_CASE_MAX_N,
        AlgorithmInvariant,
        "pivot-free odd instance with n = {n} > {SMALL_CASE_MAX_N}"
    );
    // Lexicographic over (side of 0, side of 1, ...) with Blue < Red.
    let mut side = vec![Side::Blue; n];
    for mask in 0u32..(1 << n) {
        for (v, s) in side.iter_mut().enumerate() {
            *s = if mask >> (n - 1 - v) & 1 == 1 {
                Side::Red
            } else {
                Side::Blue
            };
        }
        if first_violation(inst, &side).is_none() {
            return Ok((
                BrPartition { side },
                PartitionTrace {
                    case: CaseTag::OddSmallCase,
                    kept_blue: Vec::new(),
                    kept_red: Vec::new(),
                    removed: Vec::new(),
                    pivot: None,
                    components: Vec::new(),
                },
            ));
        }
    }
    Err(Error::AlgorithmInvariant(format!(
        "no partition found for small instance {:?}",
        inst.a()
    )))
}

fn require_edge(
    edges: &[(VertexId, VertexId)],
    want: (VertexId, VertexId),
    what: &str,
) -> Result<()> {
    let hit = edges.iter().any(|&(p, q)| (p, q) == want || (q, p) == want);
    ensure!(
        hit,
        AlgorithmInvariant,
        "kept matching is missing the {what} edge {want:?}"
    );
    Ok(())
}

struct Colored {
    sides: Vec<Option<Side>>,
    components: Vec<Component>,
}

/// Properly 2-colors the union of a blue and a red matching on the vertices
/// not in `removed`. Each component's lowest vertex goes to Blue, except the
/// component of `forced`, which is oriented so that `forced` is Blue.
fn color_kept_graph(
    n: usize,
    blue: &[(VertexId, VertexId)],
    red: &[(VertexId, VertexId)],
    removed: &[VertexId],
    forced: Option<VertexId>,
) -> Result<Colored> {
    // The walk below jumps around the permutation, so each vertex's state
    // lives in one 8-byte slot: its blue and red mates in the low 31 bits of
    // the two words, a visited flag in the top bit of the first, and its side
    // (set = red) in the top bit of the second.
    const NONE: u32 = 0x7FFF_FFFF;
    const FLAG: u32 = 0x8000_0000;
    ensure!(
        n < NONE as usize,
        Size,
        "{n} vertices exceed the 31-bit index range"
    );
    let mut active = vec![true; n];
    for &v in removed {
        active[v] = false;
    }
    let mut slots = vec![[NONE; 2]; n];
    for (color, edges) in [blue, red].into_iter().enumerate() {
        for &(p, q) in edges {
            ensure!(
                p != q && active[p] && active[q],
                AlgorithmInvariant,
                "bad kept edge ({p}, {q})"
            );
            ensure!(
                slots[p][color] == NONE && slots[q][color] == NONE,
                AlgorithmInvariant,
                "kept edges of one color do not form a matching at ({p}, {q})"
            );
            slots[p][color] = q as u32;
            slots[q][color] = p as u32;
        }
    }
    let mark = |slot: &mut [u32; 2], side: Side| {
        slot[0] |= FLAG;
        slot[1] = (slot[1] & !FLAG) | if side == Side::Red { FLAG } else { 0 };
    };

    let mut components = Vec::new();
    let mut stack = Vec::new();
    for root in 0..n {
        if !active[root] || slots[root][0] & FLAG != 0 {
            continue;
        }
        let mut vertices = Vec::new();
        let mut comp_sides = Vec::new();
        let mut closed = true;
        mark(&mut slots[root], Side::Blue);
        stack.push((root, Side::Blue));
        while let Some((v, here)) = stack.pop() {
            vertices.push(v);
            comp_sides.push(here);
            for mate in slots[v].map(|w| w & !FLAG) {
                if mate == NONE {
                    closed = false;
                    continue;
                }
                let mate = mate as usize;
                let slot = &mut slots[mate];
                if slot[0] & FLAG == 0 {
                    mark(slot, here.flip());
                    stack.push((mate, here.flip()));
                } else {
                    let there = if slot[1] & FLAG != 0 {
                        Side::Red
                    } else {
                        Side::Blue
                    };
                    ensure!(
                        there != here,
                        AlgorithmInvariant,
                        "odd cycle through {v} and {mate}"
                    );
                }
            }
        }
        let flip = forced
            .and_then(|f| vertices.iter().position(|&v| v == f))
            .is_some_and(|i| comp_sides[i] == Side::Red);
        if flip {
            for (&v, s) in vertices.iter().zip(comp_sides.iter_mut()) {
                *s = s.flip();
                mark(&mut slots[v], *s);
            }
        }
        components.push(Component {
            vertices,
            sides: comp_sides,
            cycle: closed,
        });
    }
    let sides = slots
        .iter()
        .map(|w| {
            (w[0] & FLAG != 0).then(|| {
                if w[1] & FLAG != 0 {
                    Side::Red
                } else {
                    Side::Blue
                }
            })
        })
        .collect();
    Ok(Colored { sides, components })
}

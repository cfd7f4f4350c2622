//! The diagram filling procedure that extends a basic subset `D` to `C(D)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::root::{classify, positive_roots, BasicSubset, Root};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CellSymbol {
    Empty,
    Bullet,
    Otimes,
    Plus,
    Minus,
}

impl CellSymbol {
    pub fn glyph(self) -> char {
        match self {
            CellSymbol::Empty => '.',
            CellSymbol::Bullet => '*',
            CellSymbol::Otimes => 'x',
            CellSymbol::Plus => '+',
            CellSymbol::Minus => '-',
        }
    }

    /// Empty or bullet: the cell is still "live".
    pub fn is_open(self) -> bool {
        matches!(self, CellSymbol::Empty | CellSymbol::Bullet)
    }
}

/// One step of the procedure: `⊗` on `otimes`, then `+`/`−` on each
/// decomposition `otimes = α + β` whose two places were both empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub index: usize,
    pub otimes: Root,
    pub plus: Vec<Root>,
    pub minus: Vec<Root>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    n: usize,
    cells: BTreeMap<Root, CellSymbol>,
    filled_at: BTreeMap<Root, usize>,
    steps: Vec<Step>,
}

pub fn build_diagram(d: &BasicSubset) -> Diagram {
    let n = d.n();
    let m_set = classify(d).m_set;
    let mut cells: BTreeMap<Root, CellSymbol> = positive_roots(n)
        .into_iter()
        .map(|r| (r, CellSymbol::Empty))
        .collect();
    let mut filled_at = BTreeMap::new();
    for r in &m_set {
        cells.insert(*r, CellSymbol::Bullet);
        filled_at.insert(*r, 0);
    }

    let mut steps = Vec::new();
    // BTreeMap iterates in ≻-descending order, so the first empty cell is the greatest one.
    while let Some(xi) = cells
        .iter()
        .find(|(_, s)| **s == CellSymbol::Empty)
        .map(|(r, _)| *r)
    {
        let index = steps.len() + 1;
        cells.insert(xi, CellSymbol::Otimes);
        filled_at.insert(xi, index);
        let (mut plus, mut minus) = (Vec::new(), Vec::new());
        // xi = (s,t) = (a,t) + (s,a) for t < a < s
        for a in xi.col + 1..xi.row {
            let alpha = Root::new(a, xi.col);
            let beta = Root::new(xi.row, a);
            if cells[&alpha] == CellSymbol::Empty && cells[&beta] == CellSymbol::Empty {
                cells.insert(alpha, CellSymbol::Plus);
                cells.insert(beta, CellSymbol::Minus);
                filled_at.insert(alpha, index);
                filled_at.insert(beta, index);
                plus.push(alpha);
                minus.push(beta);
            }
        }
        steps.push(Step {
            index,
            otimes: xi,
            plus,
            minus,
        });
    }
    Diagram {
        n,
        cells,
        filled_at,
        steps,
    }
}

/// `C(D) = {ξ_1 ≻ ξ_2 ≻ … ≻ ξ_c}`.
pub fn extension(d: &BasicSubset) -> Vec<Root> {
    build_diagram(d).extension()
}

/// `A_γ`: roots of `C(D)` in the row of `γ` strictly to its left.
pub fn a_set(d: &BasicSubset, gamma: &Root) -> Vec<Root> {
    build_diagram(d).a_set(gamma)
}

impl Diagram {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn cells(&self) -> &BTreeMap<Root, CellSymbol> {
        &self.cells
    }

    pub fn symbol(&self, r: &Root) -> Option<CellSymbol> {
        self.cells.get(r).copied()
    }

    pub fn extension(&self) -> Vec<Root> {
        self.steps.iter().map(|s| s.otimes).collect()
    }

    pub fn a_set(&self, gamma: &Root) -> Vec<Root> {
        self.steps
            .iter()
            .map(|s| s.otimes)
            .filter(|x| x.row == gamma.row && x.col < gamma.col)
            .collect()
    }

    /// Symbol on `r` once steps `0..=step` have run.
    pub fn symbol_after(&self, r: &Root, step: usize) -> Option<CellSymbol> {
        let sym = self.symbol(r)?;
        Some(match self.filled_at.get(r) {
            Some(&k) if k <= step => sym,
            _ => CellSymbol::Empty,
        })
    }

    /// Rows top to bottom; row `i` lists its `i-1` cells below the diagonal.
    pub fn render_ascii(&self) -> String {
        let mut out = String::new();
        for row in 1..=self.n {
            let line: Vec<String> = (1..row)
                .map(|col| self.cells[&Root::new(row, col)].glyph().to_string())
                .collect();
            writeln!(out, "{}", line.join(" ")).unwrap();
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Cell {
            root: Root,
            sym: CellSymbol,
        }
        #[derive(Serialize)]
        struct Out {
            n: usize,
            cells: Vec<Cell>,
            extension: Vec<Root>,
        }
        let out = Out {
            n: self.n,
            cells: self
                .cells
                .iter()
                .map(|(r, s)| Cell { root: *r, sym: *s })
                .collect(),
            extension: self.extension(),
        };
        serde_json::to_value(out).expect("diagram serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(i: usize, j: usize) -> Root {
        Root::new(i, j)
    }

    #[test]
    fn small_extension_by_hand() {
        let d = BasicSubset::new(4, [r(3, 1), r(4, 2)]).unwrap();
        let dg = build_diagram(&d);
        assert_eq!(dg.extension(), vec![r(3, 1), r(4, 2), r(4, 3)]);
        let first = &dg.steps()[0];
        assert_eq!(first.plus, vec![r(2, 1)]);
        assert_eq!(first.minus, vec![r(3, 2)]);
        assert!(dg.steps()[1].plus.is_empty());
        assert!(dg.steps()[2].plus.is_empty());
    }

    #[test]
    fn single_cell() {
        let d = BasicSubset::new(2, [r(2, 1)]).unwrap();
        assert_eq!(extension(&d), vec![r(2, 1)]);
    }

    #[test]
    fn empty_subset_is_all_bullets() {
        let dg = build_diagram(&BasicSubset::empty(4));
        assert!(dg.extension().is_empty());
        assert!(dg.cells().values().all(|s| *s == CellSymbol::Bullet));
    }

    #[test]
    fn a_sets_on_examples() {
        let d8 = BasicSubset::new(8, [r(4, 1), r(7, 2), r(8, 3), r(5, 4)]).unwrap();
        assert_eq!(a_set(&d8, &r(8, 4)), vec![r(8, 3)]);
        assert!(a_set(&d8, &r(4, 1)).is_empty());
        let d7 = BasicSubset::new(7, [r(4, 1), r(5, 2), r(6, 3), r(7, 5)]).unwrap();
        assert_eq!(a_set(&d7, &r(7, 6)), vec![r(7, 5)]);
    }

    #[test]
    fn replay_states() {
        let d = BasicSubset::new(4, [r(3, 1), r(4, 2)]).unwrap();
        let dg = build_diagram(&d);
        assert_eq!(dg.symbol_after(&r(2, 1), 0), Some(CellSymbol::Empty));
        assert_eq!(dg.symbol_after(&r(2, 1), 1), Some(CellSymbol::Plus));
        assert_eq!(dg.symbol_after(&r(4, 1), 0), Some(CellSymbol::Bullet));
        assert_eq!(dg.symbol_after(&r(4, 3), 2), Some(CellSymbol::Empty));
        assert_eq!(dg.symbol_after(&r(4, 3), 3), Some(CellSymbol::Otimes));
    }

    #[test]
    fn ascii_small() {
        let d = BasicSubset::new(4, [r(3, 1), r(4, 2)]).unwrap();
        assert_eq!(build_diagram(&d).render_ascii(), "\n+\nx -\n* x x\n");
    }
}

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{minor_poly, parse_q, Point, Poly, Q};
use crate::root::{classify, BasicSubset, Root};
use crate::weyl::{minor_spec, w_d};

/// Defining equations of the basic cell: `P_γ = 0` for `γ ∈ M(D)` and
/// `P_ξ ≠ 0` for `ξ ∈ D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellRelations {
    pub vanishing: Vec<(Root, Poly)>,
    pub nonvanishing: Vec<(Root, Poly)>,
}

pub fn cell_relations(d: &BasicSubset) -> CellRelations {
    let w = w_d(d);
    let minor = |r: &Root| {
        let spec = minor_spec(&w, r.row, r.col);
        assert!(
            spec.is_strictly_below(),
            "minor {spec:?} touches the diagonal"
        );
        (*r, minor_poly(&spec, false, d.n()).expect("valid minor"))
    };
    CellRelations {
        vanishing: classify(d).m_set.iter().map(minor).collect(),
        nonvanishing: d.roots().iter().map(minor).collect(),
    }
}

/// `X_{D,φ} = Σ_{ξ ∈ D} φ(ξ) E_ξ`.
pub fn x_d_phi(d: &BasicSubset, phi: &BTreeMap<Root, Q>) -> Result<Point> {
    if phi.keys().ne(d.roots().iter()) {
        return Err(Error::InvalidPhi(format!(
            "keys {:?} differ from D = {d}",
            phi.keys().map(|r| r.to_string()).collect::<Vec<_>>()
        )));
    }
    let mut x = Point::zero(d.n());
    for (r, v) in phi {
        if v.is_zero() {
            return Err(Error::InvalidPhi(format!("phi{r} = 0")));
        }
        x.set(*r, v.clone())?;
    }
    Ok(x)
}

/// Parses `"(i,j)=v, (k,l)=p/q"`.
pub fn parse_phi(s: &str) -> Result<BTreeMap<Root, Q>> {
    let mut out = BTreeMap::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let close = rest
            .find(')')
            .ok_or_else(|| Error::Parse(format!("expected \"(i,j)=v\" in {s:?}")))?;
        let root: Root = rest[..=close].parse()?;
        let after = rest[close + 1..].trim_start();
        let after = after
            .strip_prefix('=')
            .ok_or_else(|| Error::Parse(format!("missing '=' after {root}")))?;
        let end = after.find(',').unwrap_or(after.len());
        out.insert(root, parse_q(&after[..end])?);
        rest = after[end..].trim_start_matches(',').trim_start();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q;
    use crate::poly::tests::x;

    fn r(i: usize, j: usize) -> Root {
        Root::new(i, j)
    }

    #[test]
    fn phi_parsing() {
        let p = parse_phi("(3,1)=2, (4,2)=-3/4").unwrap();
        assert_eq!(p[&r(3, 1)], q(2));
        assert_eq!(p[&r(4, 2)], Q::new((-3).into(), 4.into()));
        assert!(parse_phi("(3,1)").is_err());
        assert!(parse_phi("").unwrap().is_empty());
    }

    #[test]
    fn x_d_phi_examples() {
        let d = BasicSubset::new(4, [r(3, 1), r(4, 2)]).unwrap();
        let x = x_d_phi(&d, &parse_phi("(3,1)=2,(4,2)=3").unwrap()).unwrap();
        assert_eq!(x.get(&r(3, 1)), q(2));
        assert_eq!(x.get(&r(4, 2)), q(3));
        assert_eq!(x.entries().len(), 2);
        assert!(x_d_phi(&d, &parse_phi("(3,1)=0,(4,2)=3").unwrap()).is_err());
        assert!(x_d_phi(&d, &parse_phi("(3,1)=1").unwrap()).is_err());
        let e = BasicSubset::empty(3);
        assert_eq!(x_d_phi(&e, &BTreeMap::new()).unwrap(), Point::zero(3));
    }

    #[test]
    fn empty_subset_relations() {
        let rel = cell_relations(&BasicSubset::empty(4));
        assert!(rel.nonvanishing.is_empty());
        assert_eq!(rel.vanishing.len(), 6);
        assert!(rel.vanishing.iter().all(|(g, p)| *p == Poly::var(*g)));
    }

    #[test]
    fn small_relations() {
        let d = BasicSubset::new(4, [r(3, 1), r(4, 2)]).unwrap();
        let rel = cell_relations(&d);
        assert_eq!(rel.vanishing, vec![(r(4, 1), x(4, 1))]);
        assert_eq!(
            rel.nonvanishing,
            vec![(r(3, 1), x(3, 1)), (r(4, 2), x(4, 2))]
        );
    }
}

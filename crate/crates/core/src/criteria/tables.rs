//! Structure tables for the symmetric-element algebra B and the divisor
//! group G_div, dispatched on the Albert invariants.
//!
//! The group family is recorded by its printed symbol together with the
//! evaluated size parameter k and the dimension of one tau-component of
//! H^1(Y); the component dimensions summed over the e_0 components always
//! account for the full 2g/m, which is asserted.

use super::CriteriaError;
use crate::model::AlbertType;
use std::fmt;

/// The algebra generated by symmetric endomorphisms and its center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BStructure {
    pub k_b: String,
    pub b: String,
}

fn matrix_over(z: &str, m: usize) -> String {
    if m == 1 {
        z.to_string()
    } else {
        format!("M_{m}({z})")
    }
}

/// Looks up the (K_B, B) row for the given Albert invariants.
pub fn b_structure(albert_type: AlbertType, m: usize, d: usize) -> BStructure {
    let (k_b, b) = match (albert_type, m, d) {
        (AlbertType::I, m, _) => ("E", matrix_over("E", m)),
        (AlbertType::II, m, _) => ("E", matrix_over("D", m)),
        (AlbertType::III, 1, _) => ("E", "E".to_string()),
        (AlbertType::III, m, _) => ("E", matrix_over("D", m)),
        (AlbertType::IV, 1, 1) => ("E_0", "E_0".to_string()),
        (AlbertType::IV, m, 1) => ("E", matrix_over("E", m)),
        (AlbertType::IV, m, _) => ("E", matrix_over("D", m)),
    };
    BStructure {
        k_b: k_b.to_string(),
        b,
    }
}

/// Center of the divisor group: finite, or a torus of the given rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CenterKind {
    Finite,
    Torus { rank: usize },
}

impl fmt::Display for CenterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CenterKind::Finite => f.write_str("finite"),
            CenterKind::Torus { rank } => write!(f, "torus of rank {rank}"),
        }
    }
}

/// One row of the divisor-group table: the same classical family acts on
/// each of the tau_count components of H^1(Y).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GdivStructure {
    /// Number of components, one per embedding of the real subfield K_B0.
    pub tau_count: usize,
    /// Printed family symbol; the size parameter is reported separately.
    pub family: String,
    pub k: usize,
    pub rep: String,
    /// Dimension of one tau-component of H^1(Y) under the representation.
    pub component_dim: usize,
    /// Order of the component group (2^{e_0} for type III with m >= 2).
    pub pi0_order: u64,
    pub center: CenterKind,
}

/// Looks up the divisor-group row, evaluating the size k exactly; g is the
/// dimension of the factor Y^m as a whole.
pub fn gdiv_structure(
    albert_type: AlbertType,
    m: usize,
    d: usize,
    g: usize,
    e: usize,
    e0: usize,
) -> Result<GdivStructure, CriteriaError> {
    let div = |num: usize, den: usize| -> Result<usize, CriteriaError> {
        if den == 0 || num % den != 0 {
            return Err(CriteriaError::NonIntegralK { num, den });
        }
        Ok(num / den)
    };
    let big_iv = matches!(albert_type, AlbertType::IV) && (d >= 2 || m >= 2);
    let row = match (albert_type, m, d) {
        (AlbertType::I, ..) => {
            let k = div(2 * g, m * e)?;
            ("Sp_{2k}", k, "St", k)
        }
        (AlbertType::II, ..) => {
            let k = div(g, 2 * m * e)?;
            ("Sp_{2k}", k, "St + St", 4 * k)
        }
        (AlbertType::III, 1, _) => {
            let k = div(2 * g, e)?;
            ("Sp_{2k}", k, "St", k)
        }
        (AlbertType::III, ..) => {
            let k = div(g, 2 * m * e)?;
            ("O_{2k}", k, "St + St", 4 * k)
        }
        (AlbertType::IV, 1, 1) => {
            let k = div(2 * g, e0)?;
            ("Sp_{2k}", k, "St", k)
        }
        (AlbertType::IV, ..) => {
            let k = div(2 * g, m * e * d * d)?;
            ("GL_{dk}", k, "St + St^dual", 2 * d * d * k)
        }
    };
    let (family, k, rep, component_dim) = row;
    let pi0_order = if matches!(albert_type, AlbertType::III) && m >= 2 {
        1u64 << e0
    } else {
        1
    };
    let center = if big_iv {
        CenterKind::Torus { rank: e0 }
    } else {
        CenterKind::Finite
    };
    assert_eq!(
        e0 * component_dim,
        2 * g / m,
        "component dimensions must account for all of H^1(Y)"
    );
    Ok(GdivStructure {
        tau_count: e0,
        family: family.to_string(),
        k,
        rep: rep.to_string(),
        component_dim,
        pi0_order,
        center,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b_rows() {
        let row = |t, m, d| {
            let s = b_structure(t, m, d);
            (s.k_b, s.b)
        };
        assert_eq!(row(AlbertType::I, 1, 1), ("E".into(), "E".into()));
        assert_eq!(row(AlbertType::I, 2, 1), ("E".into(), "M_2(E)".into()));
        assert_eq!(row(AlbertType::II, 1, 2), ("E".into(), "D".into()));
        assert_eq!(row(AlbertType::II, 3, 2), ("E".into(), "M_3(D)".into()));
        assert_eq!(row(AlbertType::III, 1, 2), ("E".into(), "E".into()));
        assert_eq!(row(AlbertType::III, 2, 2), ("E".into(), "M_2(D)".into()));
        assert_eq!(row(AlbertType::IV, 1, 1), ("E_0".into(), "E_0".into()));
        assert_eq!(row(AlbertType::IV, 2, 1), ("E".into(), "M_2(E)".into()));
        assert_eq!(row(AlbertType::IV, 1, 2), ("E".into(), "D".into()));
        assert_eq!(row(AlbertType::IV, 2, 2), ("E".into(), "M_2(D)".into()));
    }

    #[test]
    fn gdiv_rows() {
        // Elliptic curve with CM: one component carrying all of H^1.
        let r = gdiv_structure(AlbertType::IV, 1, 1, 1, 2, 1).unwrap();
        assert_eq!((r.family.as_str(), r.k, r.component_dim), ("Sp_{2k}", 2, 2));
        assert_eq!(r.center, CenterKind::Finite);

        // The classical fourfold.
        let r = gdiv_structure(AlbertType::IV, 1, 1, 4, 2, 1).unwrap();
        assert_eq!((r.family.as_str(), r.k, r.rep.as_str()), ("Sp_{2k}", 8, "St"));
        assert_eq!(r.component_dim, 8);

        // Type I surface over a real quadratic center.
        let r = gdiv_structure(AlbertType::I, 1, 1, 2, 2, 2).unwrap();
        assert_eq!((r.family.as_str(), r.k, r.tau_count), ("Sp_{2k}", 2, 2));
        assert_eq!(r.component_dim, 2);

        // Type II, m = 1, e = 1, dim Y = 2.
        let r = gdiv_structure(AlbertType::II, 1, 2, 2, 1, 1).unwrap();
        assert_eq!((r.family.as_str(), r.k, r.rep.as_str()), ("Sp_{2k}", 1, "St + St"));
        assert_eq!(r.component_dim, 4);

        // Type III, m = 1.
        let r = gdiv_structure(AlbertType::III, 1, 2, 2, 1, 1).unwrap();
        assert_eq!((r.family.as_str(), r.k), ("Sp_{2k}", 4));

        // Type III, m = 2: orthogonal family with component group 2^{e_0}.
        let r = gdiv_structure(AlbertType::III, 2, 2, 4, 1, 1).unwrap();
        assert_eq!((r.family.as_str(), r.k, r.pi0_order), ("O_{2k}", 1, 2));
        assert_eq!(r.component_dim, 4);
        assert_eq!(r.center, CenterKind::Finite);

        // Type IV with d = 2: general linear family, torus center.
        let r = gdiv_structure(AlbertType::IV, 1, 2, 8, 4, 2).unwrap();
        assert_eq!(
            (r.family.as_str(), r.k, r.rep.as_str()),
            ("GL_{dk}", 1, "St + St^dual")
        );
        assert_eq!(r.component_dim, 8);
        assert_eq!(r.center, CenterKind::Torus { rank: 2 });
        assert_eq!(r.pi0_order, 1);
    }

    #[test]
    fn non_integral_size_is_rejected() {
        let err = gdiv_structure(AlbertType::I, 1, 1, 2, 3, 3).unwrap_err();
        assert!(matches!(
            err,
            CriteriaError::NonIntegralK { num: 4, den: 3 }
        ));
    }
}

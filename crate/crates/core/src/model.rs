//! Data model for an abelian variety up to isogeny with a designated
//! acting field F, and its consistency validation.
//!
//! The variety is X ~ Y_1^{m_1} x .. x Y_k^{m_k} with each simple factor
//! described by its Albert invariants (type, center E, power, dimension,
//! d^2 = dim_E of the division algebra).  F acts diagonally; its CM-type
//! multiplicities are indexed by the canonical embedding order of F's
//! defining polynomial.  The compositum EF inside each factor's
//! endomorphism algebra is supplied explicitly as a product of fields with
//! both E and F embedded, which reduces all later field-theoretic tests to
//! exact linear algebra.

use std::fmt;

use crate::nf::{verify_cm, CMStructure, EmbeddedSubfield, NumberField};

/// Albert classification of the endomorphism algebra of a simple factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlbertType {
    I,
    II,
    III,
    IV,
}

impl fmt::Display for AlbertType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AlbertType::I => "I",
            AlbertType::II => "II",
            AlbertType::III => "III",
            AlbertType::IV => "IV",
        };
        f.write_str(s)
    }
}

/// One simple isogeny factor Y_i with multiplicity m_i.
#[derive(Clone, Debug)]
pub struct SimpleFactorDatum {
    pub name: String,
    pub albert_type: AlbertType,
    /// dim Y_i.
    pub dim_y: usize,
    /// m_i, the power of Y_i in X.
    pub power: usize,
    /// The center E of the division algebra End0(Y_i).
    pub center: NumberField,
    /// CM presentation of E; present exactly for type IV.
    pub cm: Option<CMStructure>,
    /// d with d^2 = dim_E of the division algebra (1 for I, 2 for II/III).
    pub d: usize,
}

impl SimpleFactorDatum {
    /// e = [E:Q].
    pub fn e(&self) -> usize {
        self.center.degree()
    }

    /// e_0 = [E_0:Q]: e for the totally real types, e/2 for type IV.
    pub fn e0(&self) -> usize {
        match self.albert_type {
            AlbertType::IV => self.center.degree() / 2,
            _ => self.center.degree(),
        }
    }
}

/// One field K_i in the decomposition EF = K_1 x .. x K_t of a factor's
/// compositum, with both E and F embedded and the K_i-dimension of its
/// summand of H^1.
#[derive(Clone, Debug)]
pub struct CompositumComponent {
    pub field: NumberField,
    pub embed_e: EmbeddedSubfield,
    pub embed_f: EmbeddedSubfield,
    pub module_rank: usize,
}

/// The full isogeny datum: simple factors, the acting field F, per-factor
/// compositum presentations and per-factor CM multiplicities of F.
#[derive(Clone, Debug)]
pub struct AbelianVarietyDatum {
    pub factors: Vec<SimpleFactorDatum>,
    pub field_f: NumberField,
    /// Parallel to `factors`: the components of EF for each factor.
    pub compositum: Vec<Vec<CompositumComponent>>,
    /// Parallel to `factors`: n_sigma indexed by the canonical embedding
    /// order of F's defining polynomial.
    pub multiplicities: Vec<Vec<u64>>,
}

impl AbelianVarietyDatum {
    /// g = dim X.
    pub fn g(&self) -> usize {
        self.factors.iter().map(|f| f.power * f.dim_y).sum()
    }

    /// r = 2g / [F:Q], the wedge degree of the Weil classes.
    pub fn r(&self) -> usize {
        2 * self.g() / self.field_f.degree()
    }

    /// r_i = 2 m_i dim(Y_i) / [F:Q] for factor i.
    pub fn r_factor(&self, i: usize) -> usize {
        2 * self.factors[i].power * self.factors[i].dim_y / self.field_f.degree()
    }

    /// n_sigma(X) = sum over factors of n_sigma, for each embedding index.
    pub fn total_multiplicities(&self) -> Vec<u64> {
        let deg = self.field_f.degree();
        let mut out = vec![0u64; deg];
        for ns in &self.multiplicities {
            for (i, n) in ns.iter().enumerate() {
                out[i] += n;
            }
        }
        out
    }
}

/// A single violated invariant, with a path into the datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub path: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

/// Result of `validate`: empty means the datum is consistent.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.violations.push(Violation {
            path: path.into(),
            message: message.into(),
        });
    }
}

/// Checks every structural invariant of the datum exactly.
pub fn validate(datum: &AbelianVarietyDatum) -> ValidationReport {
    let mut report = ValidationReport::default();
    if datum.factors.is_empty() {
        report.push("factors", "at least one simple factor is required");
        return report;
    }
    if datum.compositum.len() != datum.factors.len() {
        report.push(
            "compositum",
            format!(
                "expected one component list per factor ({}), got {}",
                datum.factors.len(),
                datum.compositum.len()
            ),
        );
    }
    if datum.multiplicities.len() != datum.factors.len() {
        report.push(
            "multiplicities",
            format!(
                "expected one multiplicity vector per factor ({}), got {}",
                datum.factors.len(),
                datum.multiplicities.len()
            ),
        );
    }
    let deg_f = datum.field_f.degree();
    let g = datum.g();
    if (2 * g) % deg_f != 0 {
        report.push(
            "field_f",
            format!("[F:Q] = {} does not divide 2g = {}", deg_f, 2 * g),
        );
    }
    let conj = datum.field_f.embeddings().conj.clone();
    for (i, factor) in datum.factors.iter().enumerate() {
        validate_factor(&mut report, i, factor);
        let two_gi = 2 * factor.power * factor.dim_y;
        if two_gi % deg_f != 0 {
            report.push(
                format!("factors[{i}]"),
                format!(
                    "[F:Q] = {} does not divide 2 m dim Y = {}",
                    deg_f, two_gi
                ),
            );
            continue;
        }
        let r_i = (two_gi / deg_f) as u64;
        if let Some(ns) = datum.multiplicities.get(i) {
            validate_multiplicities(&mut report, factor, ns, r_i, &conj);
        }
        if let Some(comps) = datum.compositum.get(i) {
            validate_compositum(&mut report, factor, &datum.field_f, comps, two_gi);
        }
    }
    report
}

fn validate_factor(report: &mut ValidationReport, i: usize, factor: &SimpleFactorDatum) {
    let path = format!("factors[{i}]");
    if factor.dim_y == 0 {
        report.push(format!("{path}.dim"), "dim Y must be positive");
    }
    if factor.power == 0 {
        report.push(format!("{path}.power"), "the power m must be positive");
    }
    if factor.d == 0 {
        report.push(format!("{path}.d"), "d must be positive");
    }
    match factor.albert_type {
        AlbertType::I => {
            if factor.d != 1 {
                report.push(format!("{path}.d"), "type I requires d = 1");
            }
        }
        AlbertType::II | AlbertType::III => {
            if factor.d != 2 {
                report.push(
                    format!("{path}.d"),
                    format!("type {} requires d = 2", factor.albert_type),
                );
            }
        }
        AlbertType::IV => {}
    }
    match factor.albert_type {
        AlbertType::I | AlbertType::II | AlbertType::III => {
            if !factor.center.is_totally_real() {
                report.push(
                    format!("{path}.center"),
                    format!(
                        "type {} requires a totally real center",
                        factor.albert_type
                    ),
                );
            }
            if factor.cm.is_some() {
                report.push(
                    format!("{path}.cm"),
                    "CM data is only meaningful for type IV",
                );
            }
        }
        AlbertType::IV => match &factor.cm {
            None => report.push(format!("{path}.cm"), "type IV requires CM data"),
            Some(cm) => {
                if cm.field != factor.center {
                    report.push(
                        format!("{path}.cm"),
                        "CM data is for a different field than the center",
                    );
                } else if let Err(e) = verify_cm(cm) {
                    report.push(format!("{path}.cm"), e.to_string());
                }
            }
        },
    }
}

fn validate_multiplicities(
    report: &mut ValidationReport,
    factor: &SimpleFactorDatum,
    ns: &[u64],
    r_i: u64,
    conj: &[usize],
) {
    let path = format!("multiplicities[{}]", factor.name);
    if ns.len() != conj.len() {
        report.push(
            path,
            format!(
                "expected one entry per embedding of F ({}), got {}",
                conj.len(),
                ns.len()
            ),
        );
        return;
    }
    for (s, &n) in ns.iter().enumerate() {
        let sp = conj[s];
        if n + ns[sp] != r_i {
            report.push(
                format!("{path}[{s}]"),
                format!(
                    "n + conjugate n = {} must equal 2 m dim Y / [F:Q] = {}",
                    n + ns[sp],
                    r_i
                ),
            );
        }
    }
    // The totally real types admit only the balanced multiplicity pattern.
    if !matches!(factor.albert_type, AlbertType::IV) {
        for (s, &n) in ns.iter().enumerate() {
            if n != ns[conj[s]] {
                report.push(
                    format!("{path}[{s}]"),
                    format!(
                        "type {} forces n = conjugate n; got {} and {}",
                        factor.albert_type, n, ns[conj[s]]
                    ),
                );
            }
        }
    }
}

fn validate_compositum(
    report: &mut ValidationReport,
    factor: &SimpleFactorDatum,
    field_f: &NumberField,
    comps: &[CompositumComponent],
    two_gi: usize,
) {
    let path = format!("compositum[{}]", factor.name);
    if comps.is_empty() {
        report.push(path, "at least one compositum component is required");
        return;
    }
    let mut total = 0usize;
    for (j, c) in comps.iter().enumerate() {
        let cpath = format!("{path}[{j}]");
        if c.module_rank == 0 {
            report.push(format!("{cpath}.module_rank"), "module rank must be positive");
        }
        if c.embed_e.over() != &c.field {
            report.push(format!("{cpath}.embed_e"), "embedding is not into this component");
        }
        if c.embed_f.over() != &c.field {
            report.push(format!("{cpath}.embed_f"), "embedding is not into this component");
        }
        if c.embed_e.sub_min_poly() != factor.center.min_poly() {
            report.push(
                format!("{cpath}.embed_e"),
                "embedded field does not match the factor's center",
            );
        }
        if c.embed_f.sub_min_poly() != field_f.min_poly() {
            report.push(
                format!("{cpath}.embed_f"),
                "embedded field does not match F",
            );
        }
        total += c.field.degree() * c.module_rank;
    }
    if total != two_gi {
        report.push(
            path,
            format!(
                "sum of [K:Q] * module_rank = {} must equal 2 m dim Y = {}",
                total, two_gi
            ),
        );
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::linalg::Poly;
    use crate::nf::EmbeddedSubfield;

    /// The classical fourfold: one simple type IV factor of dimension 4
    /// with F = E imaginary quadratic and balanced multiplicities (2, 2).
    pub fn weil_fourfold() -> AbelianVarietyDatum {
        crate::forge::weil_fourfold()
            .into_datum()
            .expect("fourfold fixture carries a datum payload")
    }

    #[test]
    fn weil_fourfold_is_valid() {
        let datum = weil_fourfold();
        let report = validate(&datum);
        assert!(report.is_valid(), "unexpected violations: {:?}", report.violations);
        assert_eq!(datum.g(), 4);
        assert_eq!(datum.r(), 4);
        assert_eq!(datum.r_factor(0), 4);
        assert_eq!(datum.total_multiplicities(), vec![2, 2]);
    }

    #[test]
    fn unbalanced_sum_is_rejected() {
        let mut datum = weil_fourfold();
        datum.multiplicities[0] = vec![3, 2];
        let report = validate(&datum);
        assert!(!report.is_valid());
        assert!(report.violations.iter().any(|v| v.message.contains("must equal")));
    }

    #[test]
    fn type_three_requires_totally_real_center() {
        let e = NumberField::new(Poly::from_i64(&[1, 0, 1])).unwrap();
        let factor = SimpleFactorDatum {
            name: "y".into(),
            albert_type: AlbertType::III,
            dim_y: 2,
            power: 1,
            center: e.clone(),
            cm: None,
            d: 2,
        };
        let comp = CompositumComponent {
            field: e.clone(),
            embed_e: EmbeddedSubfield::full(&e).unwrap(),
            embed_f: EmbeddedSubfield::full(&e).unwrap(),
            module_rank: 2,
        };
        let datum = AbelianVarietyDatum {
            factors: vec![factor],
            field_f: e,
            compositum: vec![vec![comp]],
            multiplicities: vec![vec![1, 1]],
        };
        let report = validate(&datum);
        assert!(report
            .violations
            .iter()
            .any(|v| v.message.contains("totally real center")));
    }

    #[test]
    fn multiplicity_sums_add_over_factors() {
        let f = NumberField::new(Poly::from_i64(&[1, 0, 1])).unwrap();
        let mk = |name: &str, dim_y: usize| SimpleFactorDatum {
            name: name.into(),
            albert_type: AlbertType::IV,
            dim_y,
            power: 1,
            center: f.clone(),
            cm: Some(CMStructure {
                real_gen: f.zero(),
                eta: f.gen(),
                field: f.clone(),
            }),
            d: 1,
        };
        let comp = |rank: usize| CompositumComponent {
            field: f.clone(),
            embed_e: EmbeddedSubfield::full(&f).unwrap(),
            embed_f: EmbeddedSubfield::full(&f).unwrap(),
            module_rank: rank,
        };
        let datum = AbelianVarietyDatum {
            factors: vec![mk("a", 1), mk("b", 3)],
            field_f: f.clone(),
            compositum: vec![vec![comp(1)], vec![comp(3)]],
            multiplicities: vec![vec![1, 0], vec![1, 2]],
        };
        let report = validate(&datum);
        assert!(report.is_valid(), "violations: {:?}", report.violations);
        assert_eq!(datum.total_multiplicities(), vec![2, 2]);
    }

    #[test]
    fn wrong_module_rank_total_is_rejected() {
        let mut datum = weil_fourfold();
        datum.compositum[0][0].module_rank = 3;
        let report = validate(&datum);
        assert!(report
            .violations
            .iter()
            .any(|v| v.message.contains("module_rank") || v.message.contains("must equal 2 m dim Y")));
    }
}

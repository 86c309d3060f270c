//! Serializable report documents.

use modp_kisin::{ExtendedWeylElt, LaurentPoly, Mat2, Perm, SerreWeightLabel};
use serde::{Deserialize, Serialize};

use crate::config::{Config, FieldEnc};

/// A Laurent polynomial as `[degree, coefficient]` pairs.
pub type PolyDto = Vec<(i64, FieldEnc)>;

pub fn poly(x: &LaurentPoly) -> PolyDto {
    x.terms().map(|(d, c)| (d, FieldEnc::encode(c))).collect()
}

pub fn matrix(m: &Mat2) -> [[PolyDto; 2]; 2] {
    [[poly(m.get(0, 0)), poly(m.get(0, 1))], [poly(m.get(1, 0)), poly(m.get(1, 1))]]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelDto {
    pub diffs: Vec<i64>,
    pub twist: i64,
    pub dim: u64,
}

impl From<&SerreWeightLabel> for LabelDto {
    fn from(l: &SerreWeightLabel) -> Self {
        LabelDto { diffs: l.diffs.clone(), twist: l.twist, dim: modp_kisin::d0::serre_weight_dim(l) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeylDto {
    /// Index tuple under `t(2,1) → 1`, `wt(2,1) → 2`, `t(1,2) → 3`.
    pub index: Vec<u8>,
    pub name: String,
}

impl From<&ExtendedWeylElt> for WeylDto {
    fn from(w: &ExtendedWeylElt) -> Self {
        WeylDto { index: w.comps.iter().map(|c| c.index().unwrap_or(0)).collect(), name: w.to_string() }
    }
}

pub fn perm_name(s: Perm) -> String {
    match s {
        Perm::Identity => "id".into(),
        Perm::Swap => "swap".into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Describe {
    pub reducible: bool,
    pub semisimple: bool,
    pub zero_count: usize,
    pub level: usize,
    pub exponent: i64,
    pub twist_exponent: i64,
    pub mu_minus_eta: Vec<(i64, i64)>,
    pub depth: Option<i64>,
    pub strict_deep: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightDto {
    pub b: Vec<i64>,
    pub label: LabelDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdmDto {
    pub element: WeylDto,
    pub star: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XSigmaDto {
    pub b: Vec<i64>,
    pub theta: Vec<String>,
    pub members: Vec<WeylDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XSet {
    pub x_rho: Vec<WeylDto>,
    pub x_sigma: Vec<XSigmaDto>,
    pub union_matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeDto {
    pub w_tilde: WeylDto,
    pub s_tau: Vec<String>,
    pub mu_tau: Vec<(i64, i64)>,
    pub depth: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KisinDto {
    pub w_tilde: WeylDto,
    /// `matrices[i]` is `Ā^(i)`.
    pub matrices: Vec<[[PolyDto; 2]; 2]>,
    pub shape: Vec<String>,
    pub gauge: Vec<bool>,
    pub height: Vec<bool>,
    pub recovery: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConsequencesDto {
    pub vectors_checked: usize,
    pub six_params_vanish: bool,
    pub m21_divisible_by_v: bool,
    pub m12_vanishes: bool,
    pub c6_relations: bool,
    pub scalar_endomorphism: bool,
    pub dual_identity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TangentDto {
    pub sigma: Vec<i64>,
    pub degree: i64,
    pub unknowns: usize,
    pub rows: usize,
    pub rank: usize,
    pub param_kernel_dim: usize,
    pub m_kernel_dim: usize,
    pub injective: bool,
    pub stable: bool,
    pub lower_degree_agrees: bool,
    pub consequences: ConsequencesDto,
    /// Basis of the φ-module kernel, each vector as `[column, value]` pairs.
    pub kernel_basis: Vec<Vec<(String, FieldEnc)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstituentDto {
    pub a: Vec<i64>,
    pub label: LabelDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDto {
    pub sigma: Vec<i64>,
    pub socle: LabelDto,
    pub j: Vec<usize>,
    pub eps: Vec<i64>,
    pub constituents: Vec<ConstituentDto>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct D0Dto {
    pub reading: String,
    pub components: Vec<ComponentDto>,
    pub multiplicity_free: bool,
    pub weights_occur_once: bool,
    pub socles_enumerate: bool,
    pub downward_closed: bool,
    pub partial_orders: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleDto {
    pub coset_targets: usize,
    pub coset_agree: usize,
    pub recovery_samples: usize,
    pub recovery_pairs: usize,
    pub recovery_agree: usize,
    pub table_rows: usize,
    pub table_agree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, tag = "command", content = "result", rename_all = "lowercase")]
pub enum Body {
    Describe(Describe),
    Weights(Vec<WeightDto>),
    Adm(Vec<AdmDto>),
    Xset(XSet),
    Types(Vec<TypeDto>),
    Kisin(Vec<KisinDto>),
    Tangent(Vec<TangentDto>),
    D0(D0Dto),
    Oracle(OracleDto),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub config: Config,
    pub body: Body,
}

#[cfg(test)]
mod tests {
    use super::*;
    use modp_kisin::Field;

    #[test]
    fn polynomials_encode_as_degree_pairs() {
        let f = Field::prime(7).unwrap();
        let x = LaurentPoly::from_terms([(-1, f.from_int(3)), (2, f.from_int(-1))]);
        assert_eq!(serde_json::to_string(&poly(&x)).unwrap(), "[[-1,3],[2,6]]");
    }

    #[test]
    fn body_is_tagged() {
        let b = Body::Adm(vec![]);
        assert_eq!(serde_json::to_string(&b).unwrap(), r#"{"command":"adm","result":[]}"#);
        assert!(serde_json::from_str::<Body>(r#"{"command":"adm","result":[],"x":1}"#).is_err());
    }
}

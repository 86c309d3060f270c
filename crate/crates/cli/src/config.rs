//! JSON configuration of a `ρ̄`.

use std::path::Path;

use modp_kisin::{Field, FieldElement, Mode, RhoBar};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// An element of `F`: an integer in a prime field, or the coordinates
/// `[c0, c1, ...]` in the basis `1, t, t², ...` of an extension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldEnc {
    Int(i64),
    Coords(Vec<i64>),
}

impl FieldEnc {
    pub fn decode(&self, field: &Field) -> Result<FieldElement, CliError> {
        match self {
            FieldEnc::Int(n) => Ok(field.from_int(*n)),
            FieldEnc::Coords(c) => field.element(c).map_err(CliError::from),
        }
    }

    pub fn encode(x: &FieldElement) -> FieldEnc {
        match x.as_prime() {
            Some(n) if x.field().degree() == 1 => FieldEnc::Int(n as i64),
            _ => FieldEnc::Coords(x.coords().iter().map(|&c| c as i64).collect()),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    #[default]
    Strict,
    Permissive,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Strict => Mode::Strict,
            ModeArg::Permissive => Mode::Permissive,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub p: u32,
    pub f: usize,
    /// Degree of the coefficient field `F` over `F_p`.
    #[serde(default = "one")]
    pub field_degree: usize,
    pub r: Vec<i64>,
    pub a: Vec<FieldEnc>,
    pub alpha: Vec<FieldEnc>,
    pub beta: Vec<FieldEnc>,
    #[serde(default)]
    pub irreducible: bool,
    #[serde(default)]
    pub mode: ModeArg,
    #[serde(default)]
    pub seed: u64,
}

fn one() -> usize {
    1
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Config::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Config, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn field(&self) -> Result<Field, CliError> {
        Ok(Field::extension(self.p, self.field_degree)?)
    }

    pub fn rho(&self) -> Result<RhoBar, CliError> {
        if self.r.len() != self.f {
            return Err(CliError::Config(format!("r has length {} but f = {}", self.r.len(), self.f)));
        }
        let field = self.field()?;
        let decode = |v: &[FieldEnc]| v.iter().map(|x| x.decode(&field)).collect::<Result<Vec<_>, _>>();
        Ok(RhoBar::new(
            field.clone(),
            self.r.clone(),
            decode(&self.a)?,
            decode(&self.alpha)?,
            decode(&self.beta)?,
            self.irreducible,
            self.mode.into(),
        )?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASIC: &str = r#"{"p": 31, "f": 1, "r": [13], "a": [0], "alpha": [3], "beta": [7]}"#;

    #[test]
    fn defaults() {
        let c = Config::parse(BASIC).unwrap();
        assert_eq!(c.mode, ModeArg::Strict);
        assert_eq!(c.field_degree, 1);
        assert!(!c.irreducible);
        let rho = c.rho().unwrap();
        assert!(rho.is_semisimple());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = BASIC.replace("\"f\": 1", "\"f\": 1, \"extra\": 2");
        assert!(matches!(Config::parse(&text), Err(CliError::Config(_))));
    }

    #[test]
    fn extension_coordinates() {
        let text = r#"{"p": 31, "f": 1, "field_degree": 2, "r": [13], "a": [[1, 2]], "alpha": [[0, 1]], "beta": [5]}"#;
        let rho = Config::parse(text).unwrap().rho().unwrap();
        assert_eq!(rho.a[0].coords(), &[1, 2]);
        assert_eq!(FieldEnc::encode(&rho.alpha[0]), FieldEnc::Coords(vec![0, 1]));
        assert_eq!(FieldEnc::encode(&rho.beta[0]), FieldEnc::Coords(vec![5, 0]));
    }

    #[test]
    fn length_mismatch() {
        let text = BASIC.replace("\"f\": 1", "\"f\": 2");
        assert!(Config::parse(&text).unwrap().rho().is_err());
    }
}

//! Fixture files: measures, self-maps and the cases that bind them.
//!
//! ```json
//! {
//!   "measures":  [[{"angle": 0.0, "re": 1.0, "im": 0.0}]],
//!   "self_maps": [{"kind": "mobius", "a": [0.5, 0.0]}],
//!   "cases":     [{"command": "verify-bound", "measure": 0, "self_map": 0}]
//! }
//! ```
//!
//! Cases refer to measures and self-maps by index. A command with no
//! matching cases runs on a default set derived from the lists.

use std::f64::consts::PI;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circle::DiskPoint;
use crate::error::{Error, Result};
use crate::measure::AtomicMeasure;
use crate::selfmap::DiskSelfMap;

/// The commands understood by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    VerifyBound,
    VerifyLemma1,
    VerifyLemma2,
    Factorize,
    KernelCompare,
    NormEstimate,
    SharpnessScan,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::VerifyBound,
        Command::VerifyLemma1,
        Command::VerifyLemma2,
        Command::Factorize,
        Command::KernelCompare,
        Command::NormEstimate,
        Command::SharpnessScan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::VerifyBound => "verify-bound",
            Command::VerifyLemma1 => "verify-lemma1",
            Command::VerifyLemma2 => "verify-lemma2",
            Command::Factorize => "factorize",
            Command::KernelCompare => "kernel-compare",
            Command::NormEstimate => "norm-estimate",
            Command::SharpnessScan => "sharpness-scan",
        }
    }
}

impl std::str::FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown command {s:?}")))
    }
}

/// One unit of work. Measures and self-maps are indices into the fixture.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Case {
    VerifyBound {
        measure: usize,
        self_map: usize,
    },
    VerifyLemma1 {
        measure: usize,
        self_map: usize,
    },
    VerifyLemma2 {
        measure: usize,
        a: Complex64,
    },
    Factorize {
        self_map: usize,
    },
    KernelCompare {
        a: Complex64,
        h: Vec<Complex64>,
        zeta_angle: f64,
        r: f64,
    },
    NormEstimate {
        measure: usize,
    },
    SharpnessScan {
        a_values: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree_cap: Option<usize>,
    },
}

impl Case {
    pub fn command(&self) -> Command {
        match self {
            Case::VerifyBound { .. } => Command::VerifyBound,
            Case::VerifyLemma1 { .. } => Command::VerifyLemma1,
            Case::VerifyLemma2 { .. } => Command::VerifyLemma2,
            Case::Factorize { .. } => Command::Factorize,
            Case::KernelCompare { .. } => Command::KernelCompare,
            Case::NormEstimate { .. } => Command::NormEstimate,
            Case::SharpnessScan { .. } => Command::SharpnessScan,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureSet {
    #[serde(default)]
    pub measures: Vec<AtomicMeasure>,
    #[serde(default)]
    pub self_maps: Vec<DiskSelfMap>,
    #[serde(default)]
    pub cases: Vec<Case>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Centers used by the default Möbius cases.
pub const STANDARD_MOBIUS: [f64; 4] = [0.0, 0.25, 0.5, 0.75];

/// Default `|a|` values of a sharpness scan.
pub const STANDARD_SCAN: [f64; 10] = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

impl FixtureSet {
    /// Parses JSON, reporting syntax and schema errors with line and column.
    pub fn from_json(text: &str, origin: &str) -> Result<Self> {
        let set: Self = serde_json::from_str(text).map_err(|e| {
            let msg = e.to_string();
            let suffix = format!(" at line {} column {}", e.line(), e.column());
            let msg = msg.strip_suffix(&suffix).unwrap_or(&msg);
            Error::InvalidInput(format!("{origin}:{}:{}: {msg}", e.line(), e.column()))
        })?;
        set.validate()?;
        Ok(set)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        Self::from_json(&text, &path.display().to_string())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fixtures serialize")
    }

    /// Point masses, the ±1 pairs, a complex three-atom measure; Möbius maps
    /// at the [`STANDARD_MOBIUS`] centers, polynomial maps, `z²` and a
    /// Blaschke factor.
    pub fn standard() -> Self {
        let measure = |atoms: &[(f64, Complex64)]| AtomicMeasure::from_angles(atoms).expect("standard measure");
        let measures = vec![
            measure(&[(0.0, c(1.0, 0.0))]),
            measure(&[(0.7, c(1.0, 0.0))]),
            measure(&[(0.0, c(1.0, 0.0)), (PI, c(1.0, 0.0))]),
            measure(&[(0.0, c(1.0, 0.0)), (PI, c(-1.0, 0.0))]),
            measure(&[(0.0, c(0.5, 0.0)), (PI, c(0.5, 0.0))]),
            measure(&[(0.3, c(0.5, 0.2)), (2.0, c(-0.3, 0.4)), (4.5, c(0.1, -0.6))]),
        ];
        let poly = |coeffs: Vec<Complex64>| DiskSelfMap::polynomial(coeffs).expect("standard self-map");
        let mut self_maps: Vec<DiskSelfMap> =
            STANDARD_MOBIUS.iter().map(|&a| DiskSelfMap::mobius(DiskPoint::real(a).expect("|a| < 1"))).collect();
        self_maps.extend([
            DiskSelfMap::identity(),
            poly(vec![c(0.25, 0.0), c(0.0, 0.0), c(0.5, 0.0)]),
            poly(vec![c(0.0, 0.0), c(0.5, 0.0)]),
            poly(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]),
            DiskSelfMap::blaschke(&[c(0.3, 0.0)], 0.0).expect("standard Blaschke factor"),
            poly(vec![c(0.1, 0.2), c(0.3, -0.1), c(0.0, 0.25)]),
        ]);
        Self { measures, self_maps, cases: Vec::new() }
    }

    fn validate(&self) -> Result<()> {
        let check = |kind: &str, i: usize, len: usize, case: usize| {
            if i < len {
                Ok(())
            } else {
                Err(Error::InvalidInput(format!("case {case}: {kind} index {i} out of range (have {len})")))
            }
        };
        for (k, case) in self.cases.iter().enumerate() {
            match case {
                Case::VerifyBound { measure, self_map } | Case::VerifyLemma1 { measure, self_map } => {
                    check("measure", *measure, self.measures.len(), k)?;
                    check("self_map", *self_map, self.self_maps.len(), k)?;
                }
                Case::VerifyLemma2 { measure, a } => {
                    check("measure", *measure, self.measures.len(), k)?;
                    DiskPoint::new(*a).map_err(|e| Error::InvalidInput(format!("case {k}: {e}")))?;
                }
                Case::Factorize { self_map } => check("self_map", *self_map, self.self_maps.len(), k)?,
                Case::NormEstimate { measure } => check("measure", *measure, self.measures.len(), k)?,
                Case::KernelCompare { .. } | Case::SharpnessScan { .. } => {}
            }
        }
        Ok(())
    }

    /// The cases for `command`: the explicit ones if any, else the defaults.
    pub fn cases_for(&self, command: Command) -> Vec<Case> {
        let explicit: Vec<Case> = self.cases.iter().filter(|c| c.command() == command).cloned().collect();
        if explicit.is_empty() {
            self.default_cases(command)
        } else {
            explicit
        }
    }

    fn default_cases(&self, command: Command) -> Vec<Case> {
        let nm = self.measures.len();
        let ns = self.self_maps.len();
        match command {
            Command::VerifyBound => (0..nm)
                .flat_map(|measure| (0..ns).map(move |self_map| Case::VerifyBound { measure, self_map }))
                .collect(),
            Command::VerifyLemma1 => {
                let centered: Vec<usize> = (0..ns).filter(|&i| self.self_maps[i].at_origin().norm() == 0.0).collect();
                (0..nm)
                    .flat_map(|measure| centered.iter().map(move |&self_map| Case::VerifyLemma1 { measure, self_map }))
                    .collect()
            }
            Command::VerifyLemma2 => (0..nm)
                .flat_map(|measure| STANDARD_MOBIUS.iter().map(move |&a| Case::VerifyLemma2 { measure, a: c(a, 0.0) }))
                .collect(),
            Command::Factorize => (0..ns).map(|self_map| Case::Factorize { self_map }).collect(),
            Command::KernelCompare => vec![
                Case::KernelCompare { a: c(0.5, 0.0), h: vec![c(1.0, 0.0)], zeta_angle: 0.0, r: 0.9 },
                Case::KernelCompare {
                    a: c(0.3, 0.4),
                    h: vec![c(0.5, 0.0), c(0.0, 0.25), c(0.25, 0.0)],
                    zeta_angle: 1.0,
                    r: 0.99,
                },
            ],
            Command::NormEstimate => (0..nm).map(|measure| Case::NormEstimate { measure }).collect(),
            Command::SharpnessScan => vec![Case::SharpnessScan { a_values: STANDARD_SCAN.to_vec(), degree_cap: None }],
        }
    }
}

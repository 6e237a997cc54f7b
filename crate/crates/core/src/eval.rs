//! Method dispatch, term counting and the enumeration guard shared by the
//! CLI, the verifier and the benchmark.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use sha2::{Digest, Sha256};

use crate::closedform::{self, GroundedFunction};
use crate::error::{Error, Result};
use crate::hyperdet::{self, tuple_count, FMap, Hypermatrix};
use crate::scalar::Scalar;

/// Largest enumeration allowed without `--force`.
pub const GUARD_LIMIT: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Brute,
    Expand,
    Lindstrom,
    MeetClosed,
    FactorClosed,
    LiGen,
    GenHauk,
    Cayley,
    Det1,
}

impl Method {
    pub const ALL: [Method; 9] = [
        Method::Brute,
        Method::Expand,
        Method::Lindstrom,
        Method::MeetClosed,
        Method::FactorClosed,
        Method::LiGen,
        Method::GenHauk,
        Method::Cayley,
        Method::Det1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Expand => "expand",
            Method::Lindstrom => "lindstrom",
            Method::MeetClosed => "meetclosed",
            Method::FactorClosed => "factorclosed",
            Method::LiGen => "ligen",
            Method::GenHauk => "genhauk",
            Method::Cayley => "cayley",
            Method::Det1 => "det1",
        }
    }

    /// Whether the method reads the grounded function rather than only the
    /// hypermatrix built from it.
    pub fn needs_grounded(self) -> bool {
        matches!(
            self,
            Method::Lindstrom | Method::MeetClosed | Method::FactorClosed | Method::LiGen | Method::GenHauk
        )
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Syntax(format!("unknown method {s:?}")))
    }
}

/// What a method is evaluated on.
#[derive(Clone, Debug)]
pub enum Instance {
    Hyper(Hypermatrix),
    Meet { gf: GroundedFunction, k: usize },
}

impl Instance {
    pub fn side(&self) -> usize {
        match self {
            Instance::Hyper(m) => m.side(),
            Instance::Meet { gf, .. } => gf.len(),
        }
    }

    pub fn order(&self) -> usize {
        match self {
            Instance::Hyper(m) => m.order(),
            Instance::Meet { k, .. } => *k,
        }
    }

    pub fn hypermatrix(&self) -> Result<Hypermatrix> {
        match self {
            Instance::Hyper(m) => Ok(m.clone()),
            Instance::Meet { gf, k } => closedform::build_meet_hypermatrix(gf, *k),
        }
    }

    /// Canonical text used for the input digest.
    pub fn canonical_text(&self) -> String {
        match self {
            Instance::Hyper(m) => m.to_text(),
            Instance::Meet { gf, k } => format!(
                "{}k {k}\n{}",
                crate::lattice::poset_to_text(gf.poset()),
                gf.to_text("-")
            ),
        }
    }
}

/// Number of terms (tuples, slice determinants, subsets or factors) the
/// method enumerates.
pub fn term_count(method: Method, inst: &Instance) -> BigUint {
    let (n, k) = (inst.side(), inst.order());
    match method {
        Method::Brute | Method::Det1 => tuple_count(n, k - 1),
        Method::Expand => tuple_count(n, k.saturating_sub(2)),
        Method::Cayley => tuple_count(n, k),
        Method::Lindstrom | Method::MeetClosed | Method::FactorClosed => BigUint::from(n),
        Method::LiGen | Method::GenHauk => match inst {
            Instance::Meet { gf, .. } => BigUint::from(closedform::subset_count(gf)) * tuple_count(n, k - 2),
            Instance::Hyper(_) => BigUint::from(0u8),
        },
    }
}

pub fn check_guard(terms: &BigUint, force: bool) -> Result<()> {
    if !force && terms > &BigUint::from(GUARD_LIMIT) {
        return Err(Error::GuardExceeded {
            terms: terms.to_string(),
            limit: GUARD_LIMIT,
        });
    }
    Ok(())
}

/// Evaluates without the guard.
pub fn evaluate(method: Method, inst: &Instance, f: &FMap) -> Result<Scalar> {
    let gf_for = |method: Method| match inst {
        Instance::Meet { gf, k } => Ok((gf, *k)),
        Instance::Hyper(_) => Err(Error::MethodNotApplicable {
            method: method.name().into(),
            needs: "a grounded function (--gf), not a bare hypermatrix".into(),
        }),
    };
    match method {
        Method::Brute => hyperdet::fdet_bruteforce(&inst.hypermatrix()?, f),
        Method::Expand => hyperdet::fdet_expansion(&inst.hypermatrix()?, f),
        Method::Cayley => hyperdet::cayley_det(&inst.hypermatrix()?),
        Method::Det1 => Ok(hyperdet::det1(&inst.hypermatrix()?)),
        Method::Lindstrom => {
            let (gf, k) = gf_for(method)?;
            closedform::lindstrom_fdet(gf, k, f)
        }
        Method::MeetClosed => {
            let (gf, k) = gf_for(method)?;
            closedform::meet_closed_fdet(gf, k, f)
        }
        Method::FactorClosed => {
            let (gf, k) = gf_for(method)?;
            closedform::factor_closed_fdet(gf, k, f)
        }
        Method::LiGen => {
            let (gf, k) = gf_for(method)?;
            closedform::ligen_fdet(gf, k, f)
        }
        Method::GenHauk => {
            let (gf, k) = gf_for(method)?;
            closedform::genhauk_fdet(gf, k, f)
        }
    }
}

pub fn sha256_hex(text: &str) -> String {
    format!("{:x}", Sha256::digest(text.as_bytes()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub method: Method,
    pub input_digest: String,
    pub value: Scalar,
    pub terms: BigUint,
    pub wall_ms: f64,
}

impl RunReport {
    pub fn value_digest(&self) -> String {
        sha256_hex(&self.value.to_string())
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "method: {}", self.method)?;
        writeln!(f, "input: {}", self.input_digest)?;
        writeln!(f, "value: {}", self.value)?;
        writeln!(f, "terms: {}", self.terms)?;
        write!(f, "wall_ms: {:.3}", self.wall_ms)
    }
}

/// Guarded, timed evaluation.
pub fn run(method: Method, inst: &Instance, f: &FMap, force: bool) -> Result<RunReport> {
    if inst.order() < 2 {
        return Err(Error::DimensionMismatch(format!(
            "order k = {}, need k ≥ 2",
            inst.order()
        )));
    }
    f.check(inst.side(), inst.order())?;
    let terms = term_count(method, inst);
    check_guard(&terms, force)?;
    let start = Instant::now();
    let value = evaluate(method, inst, f)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(RunReport {
        method,
        input_digest: sha256_hex(&inst.canonical_text()),
        value,
        terms,
        wall_ms,
    })
}

/// Term count as `u64`, saturating.
pub fn terms_u64(terms: &BigUint) -> u64 {
    terms.to_u64().unwrap_or(u64::MAX)
}

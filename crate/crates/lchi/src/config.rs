use std::path::PathBuf;

use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// Which `xi` the `dirichlet` command evaluates at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XiSpec {
    /// Every element of `F_{q^r}`.
    All,
    /// Power-basis coordinates in `F_{q^r}`.
    List(Vec<Vec<u32>>),
}

/// Largest constant field accepted.
pub const MAX_Q: u32 = 16;

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub p: u32,
    pub e: u32,
    pub ext_r: u32,
    pub prec_theta: i64,
    pub nt: usize,
    /// `None` lets each command choose (see the README).
    pub nu: Option<usize>,
    pub deg_cutoff: Option<usize>,
    pub alpha: Vec<u32>,
    pub k: Vec<u32>,
    pub xi: XiSpec,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            p: 2,
            e: 1,
            ext_r: 1,
            prec_theta: 24,
            nt: 6,
            nu: None,
            deg_cutoff: None,
            alpha: vec![1],
            k: vec![1, 2],
            xi: XiSpec::All,
            format: Format::Json,
            cache_dir: None,
            jobs: 1,
        }
    }
}

/// Splits a prime power into `(p, e)`.
pub fn split_prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut r, mut e) = (q, 0);
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

impl RunConfig {
    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.e)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.e == 0 || self.q() > MAX_Q as u64 || split_prime_power(self.p) != Some((self.p, 1))
        {
            return Err(format!(
                "q = {}^{} must be a prime power at most {MAX_Q}",
                self.p, self.e
            ));
        }
        if self.ext_r == 0 {
            return Err("--r must be positive".into());
        }
        if self.prec_theta < 1 {
            return Err("--prec-theta must be positive".into());
        }
        if self.nu == Some(0) {
            return Err("--Nu must be positive".into());
        }
        if self.alpha.contains(&0) {
            return Err("--alpha entries must be positive".into());
        }
        if self.jobs == 0 {
            return Err("--jobs must be positive".into());
        }
        Ok(())
    }

    /// Everything that can change a command's output; the cache directory
    /// and job count cannot.
    pub fn key_params(&self) -> Value {
        let xi = match &self.xi {
            XiSpec::All => json!("all"),
            XiSpec::List(v) => json!(v),
        };
        json!({
            "p": self.p,
            "e": self.e,
            "r": self.ext_r,
            "prec_theta": self.prec_theta,
            "Nt": self.nt,
            "Nu": self.nu,
            "D": self.deg_cutoff,
            "alpha": self.alpha,
            "k": self.k,
            "xi": xi,
            "format": match self.format {
                Format::Json => "json",
                Format::Text => "text",
            },
        })
    }
}

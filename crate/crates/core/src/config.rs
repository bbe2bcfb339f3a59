//! Run parameters and their validation.

use thiserror::Error;

/// Every parameter of a single simulation run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub width: usize,
    pub height: usize,
    pub iterations: usize,
    pub broadcast_enabled: bool,
    pub leader_p_invent: f64,
    pub follower_p_invent: f64,
    pub leader_r_change: f64,
    pub follower_r_change: f64,
    /// Knowledge learning rate.
    pub alpha: f64,
    /// Smoothing added to knowledge weights when sampling invented values.
    pub epsilon: f64,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            width: 10,
            height: 10,
            iterations: 100,
            broadcast_enabled: false,
            leader_p_invent: 0.02,
            follower_p_invent: 0.02,
            leader_r_change: 1.0 / 3.0,
            follower_r_change: 1.0 / 3.0,
            alpha: 0.1,
            epsilon: 0.1,
            seed: 0,
        }
    }
}

/// A bad value for one key.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("`{key}` = {value}: {reason}")]
pub struct ValueError {
    pub key: String,
    pub value: String,
    pub reason: String,
}

impl ValueError {
    fn new(key: &str, value: &str, reason: impl Into<String>) -> Self {
        ValueError {
            key: key.to_string(),
            value: value.to_string(),
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: malformed line {text:?}, expected `key = value`")]
    Malformed { line: usize, text: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key `{key}`")]
    DuplicateKey { line: usize, key: String },
    #[error("line {line}: {source}")]
    Value { line: usize, source: ValueError },
    #[error("{0}")]
    Invalid(ValueError),
}

impl RunConfig {
    /// Recognised keys, in documentation order.
    pub const KEYS: [&'static str; 11] = [
        "width",
        "height",
        "iterations",
        "broadcast_enabled",
        "leader_p_invent",
        "follower_p_invent",
        "leader_r_change",
        "follower_r_change",
        "alpha",
        "epsilon",
        "seed",
    ];

    pub fn is_key(key: &str) -> bool {
        Self::KEYS.contains(&key)
    }

    pub fn n_agents(&self) -> usize {
        self.width * self.height
    }

    /// Parses `value` for `key` and stores it, checking the key's own range.
    ///
    /// Returns `Ok(false)` for an unrecognised key.
    pub fn set(&mut self, key: &str, value: &str) -> Result<bool, ValueError> {
        let v = value.trim();
        match key {
            "width" => self.width = parse_dim(key, v)?,
            "height" => self.height = parse_dim(key, v)?,
            "iterations" => {
                let n: usize = parse_num(key, v)?;
                if n < 1 {
                    return Err(ValueError::new(key, v, "must be at least 1"));
                }
                self.iterations = n;
            }
            "broadcast_enabled" => {
                self.broadcast_enabled = match v {
                    "true" | "1" => true,
                    "false" | "0" => false,
                    _ => return Err(ValueError::new(key, v, "expected true or false")),
                }
            }
            "leader_p_invent" => self.leader_p_invent = parse_probability(key, v)?,
            "follower_p_invent" => self.follower_p_invent = parse_probability(key, v)?,
            "leader_r_change" => self.leader_r_change = parse_unit_open(key, v)?,
            "follower_r_change" => self.follower_r_change = parse_unit_open(key, v)?,
            "alpha" => self.alpha = parse_unit_open(key, v)?,
            "epsilon" => {
                let e: f64 = parse_num(key, v)?;
                if !(e.is_finite() && e > 0.0) {
                    return Err(ValueError::new(key, v, "must be a finite value > 0"));
                }
                self.epsilon = e;
            }
            "seed" => self.seed = parse_num(key, v)?,
            _ => return Ok(false),
        }
        Ok(true)
    }

    /// Checks every range invariant, including the cross-field ones.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let check = |key: &str, value: f64, ok: bool, reason: &str| {
            if ok {
                Ok(())
            } else {
                Err(ConfigError::Invalid(ValueError::new(
                    key,
                    &value.to_string(),
                    reason,
                )))
            }
        };
        check("width", self.width as f64, self.width >= 1, "must be at least 1")?;
        check("height", self.height as f64, self.height >= 1, "must be at least 1")?;
        check(
            "width*height",
            self.n_agents() as f64,
            self.n_agents() >= 4,
            "grid must hold at least 4 agents",
        )?;
        check(
            "iterations",
            self.iterations as f64,
            self.iterations >= 1,
            "must be at least 1",
        )?;
        for (key, p) in [
            ("leader_p_invent", self.leader_p_invent),
            ("follower_p_invent", self.follower_p_invent),
        ] {
            check(key, p, (0.0..=1.0).contains(&p), "must lie in [0, 1]")?;
        }
        for (key, r) in [
            ("leader_r_change", self.leader_r_change),
            ("follower_r_change", self.follower_r_change),
            ("alpha", self.alpha),
        ] {
            check(key, r, r > 0.0 && r <= 1.0, "must lie in (0, 1]")?;
        }
        check(
            "epsilon",
            self.epsilon,
            self.epsilon.is_finite() && self.epsilon > 0.0,
            "must be a finite value > 0",
        )?;
        Ok(())
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, ValueError> {
    v.parse()
        .map_err(|_| ValueError::new(key, v, "not a valid number"))
}

fn parse_dim(key: &str, v: &str) -> Result<usize, ValueError> {
    let n: usize = parse_num(key, v)?;
    if n == 0 {
        return Err(ValueError::new(key, v, "must be at least 1"));
    }
    Ok(n)
}

fn parse_probability(key: &str, v: &str) -> Result<f64, ValueError> {
    let p: f64 = parse_num(key, v)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(ValueError::new(key, v, "must lie in [0, 1]"));
    }
    Ok(p)
}

fn parse_unit_open(key: &str, v: &str) -> Result<f64, ValueError> {
    let r: f64 = parse_num(key, v)?;
    if !(r > 0.0 && r <= 1.0) {
        return Err(ValueError::new(key, v, "must lie in (0, 1]"));
    }
    Ok(r)
}

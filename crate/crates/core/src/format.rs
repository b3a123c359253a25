//! JSON input formats and exact number rendering.
//!
//! Three documents are understood:
//!
//! * networks: `{"n", "domain", "factors": [{"vars", "entries", "scale"}]}`
//!   with `null` entries meaning `∞` and each entry divided by its factor's
//!   `scale` (default 1);
//! * chains: `{"type": "chain", "n": int | "inf", "inputs", "range",
//!   "one_body", "two_body": {"1": [[..]], ..}, "boundary": "obc" | "pbc"}`;
//! * modular inequalities: `{"type": "modular", "d", "m", "alpha"}`.
//!
//! Coefficients may be JSON numbers or strings such as `"-3/4"`, `"0.25"`
//! or `"1e-2"`; all of them are converted to exact rationals.

use num_integer::Integer;
use num_rational::Ratio;
use serde_json::{json, Map, Value};

use crate::bell::{BoundaryCondition, ChainBellSpec, ChainLength, ModularBellSpec};
use crate::error::{Result, TropError};
use crate::network::FactorNetwork;
use crate::semiring::Trop;
use crate::tensor::TropTensor;

fn parse_err(msg: impl Into<String>) -> TropError {
    TropError::Parse(msg.into())
}

/// Parses `"p"`, `"p/q"`, `"1.25"` or `"-3e-2"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Ratio<i64>> {
    let s = text.trim();
    let bad = || parse_err(format!("`{text}` is not a rational number"));
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(parse_err(format!("`{text}` has a zero denominator")));
        }
        return Ok(Ratio::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let overflow = || parse_err(format!("`{text}` does not fit in 64-bit rationals"));
    let mut num: i64 = 0;
    for c in int_part.chars().chain(frac_part.chars()) {
        num = num
            .checked_mul(10)
            .and_then(|v| v.checked_add(c.to_digit(10).expect("digit") as i64))
            .ok_or_else(overflow)?;
    }
    let shift = exp - frac_part.len() as i32;
    let pow = 10i64.checked_pow(shift.unsigned_abs()).ok_or_else(overflow)?;
    let value = if shift >= 0 {
        Ratio::from_integer(num.checked_mul(pow).ok_or_else(overflow)?)
    } else {
        Ratio::new(num, pow)
    };
    Ok(if neg { -value } else { value })
}

/// `"p/q"`, or `"p"` for integers.
pub fn format_rational(r: Ratio<i64>) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering rounded to 12 significant digits, half away from zero,
/// computed exactly by long division.
pub fn format_decimal(r: Ratio<i64>) -> String {
    const SIG: usize = 12;
    let neg = *r.numer() < 0;
    let p = (*r.numer() as i128).abs();
    let q = *r.denom() as i128;
    if p == 0 {
        return "0".into();
    }
    let int_digits: Vec<u8> = (p / q).to_string().bytes().map(|b| b - b'0').collect();
    let int_len = if p / q == 0 { 0 } else { int_digits.len() };
    let mut digits: Vec<u8> = if int_len == 0 { Vec::new() } else { int_digits };
    let mut rem = p % q;
    // leading fractional zeros are positions, not significant digits
    let mut frac_zeros = 0usize;
    let mut started = int_len > 0;
    let mut significant = digits.len();
    while significant <= SIG {
        rem *= 10;
        let d = (rem / q) as u8;
        rem %= q;
        if !started && d == 0 {
            frac_zeros += 1;
            continue;
        }
        started = true;
        digits.push(d);
        significant += 1;
    }
    // digits holds SIG + 1 significant digits, or more when the integer part is long
    let keep = SIG;
    let round_up = digits[keep] >= 5;
    let tail_len = digits.len() - keep;
    digits.truncate(keep);
    let mut carry = round_up;
    for d in digits.iter_mut().rev() {
        if !carry {
            break;
        }
        if *d == 9 {
            *d = 0;
        } else {
            *d += 1;
            carry = false;
        }
    }
    digits.extend(std::iter::repeat_n(0, tail_len));
    let mut int_len = int_len;
    if carry {
        digits.insert(0, 1);
        if int_len > 0 {
            int_len += 1;
        } else if frac_zeros > 0 {
            frac_zeros -= 1;
        } else {
            int_len = 1;
        }
    }
    let to_str = |ds: &[u8]| ds.iter().map(|d| char::from(b'0' + d)).collect::<String>();
    let (int_str, frac_str) = if int_len > 0 {
        let int_len = int_len.min(digits.len());
        (to_str(&digits[..int_len]), to_str(&digits[int_len..]))
    } else {
        ("0".to_string(), "0".repeat(frac_zeros) + &to_str(&digits))
    };
    let frac_str = frac_str.trim_end_matches('0');
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(&int_str);
    if !frac_str.is_empty() {
        out.push('.');
        out.push_str(frac_str);
    }
    out
}

/// A network with integer costs and the denominator they were scaled by.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledNetwork {
    pub network: FactorNetwork,
    pub scale: i64,
}

impl ScaledNetwork {
    pub fn unscale(&self, v: i64) -> Ratio<i64> {
        Ratio::new(v, self.scale)
    }

    pub fn to_json(&self) -> Value {
        let factors: Vec<Value> = self
            .network
            .factors()
            .iter()
            .map(|f| {
                let entries: Vec<Value> = f.data().iter().map(|v| v.value().map_or(Value::Null, Value::from)).collect();
                json!({ "vars": f.labels(), "entries": entries, "scale": self.scale })
            })
            .collect();
        json!({ "n": self.network.n(), "domain": self.network.domain(), "factors": factors })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SpecFile {
    Network(ScaledNetwork),
    Chain(ChainBellSpec),
    Modular(ModularBellSpec),
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)
            .map_err(|e| parse_err(format!("invalid JSON: {e}")))?;
        let obj = value.as_object().ok_or_else(|| parse_err("top level must be a JSON object"))?;
        match obj.get("type").map(|t| t.as_str()) {
            Some(Some("chain")) => parse_chain(obj).map(SpecFile::Chain),
            Some(Some("modular")) => parse_modular(obj).map(SpecFile::Modular),
            Some(Some("network")) | None => parse_network(obj).map(SpecFile::Network),
            Some(Some(other)) => Err(parse_err(format!(
                "field `type`: unknown kind `{other}` (expected chain, modular or network)"
            ))),
            Some(None) => Err(parse_err("field `type` must be a string")),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SpecFile::Network(_) => "network",
            SpecFile::Chain(_) => "chain",
            SpecFile::Modular(_) => "modular",
        }
    }
}

fn field<'a>(obj: &'a Map<String, Value>, name: &str) -> Result<&'a Value> {
    obj.get(name).ok_or_else(|| parse_err(format!("missing field `{name}`")))
}

fn count(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|u| u as usize)
        .ok_or_else(|| parse_err(format!("field `{path}` must be a non-negative integer")))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(format!("field `{path}` must be an array")))
}

fn rational(v: &Value, path: &str) -> Result<Ratio<i64>> {
    let parsed = match v {
        Value::Number(n) => parse_rational(&n.to_string()),
        Value::String(s) => parse_rational(s),
        _ => return Err(parse_err(format!("field `{path}` must be a number or a rational string"))),
    };
    parsed.map_err(|e| parse_err(format!("field `{path}`: {e}")))
}

fn parse_network(obj: &Map<String, Value>) -> Result<ScaledNetwork> {
    let n = count(field(obj, "n")?, "n")?;
    let domain = count(field(obj, "domain")?, "domain")?;
    let raw = array(field(obj, "factors")?, "factors")?;

    let mut parsed: Vec<(Vec<usize>, Vec<Option<Ratio<i64>>>)> = Vec::with_capacity(raw.len());
    for (i, f) in raw.iter().enumerate() {
        let path = format!("factors[{i}]");
        let fobj = f.as_object().ok_or_else(|| parse_err(format!("`{path}` must be an object")))?;
        let vars = array(
            fobj.get("vars").ok_or_else(|| parse_err(format!("missing field `{path}.vars`")))?,
            &format!("{path}.vars"),
        )?
        .iter()
        .enumerate()
        .map(|(j, v)| count(v, &format!("{path}.vars[{j}]")))
        .collect::<Result<Vec<_>>>()?;
        let scale = match fobj.get("scale") {
            None => 1,
            Some(v) => {
                let s = count(v, &format!("{path}.scale"))?;
                if s == 0 {
                    return Err(parse_err(format!("field `{path}.scale` must be positive")));
                }
                s as i64
            }
        };
        let entries = array(
            fobj.get("entries").ok_or_else(|| parse_err(format!("missing field `{path}.entries`")))?,
            &format!("{path}.entries"),
        )?;
        let expected = domain.checked_pow(vars.len() as u32).unwrap_or(usize::MAX);
        if entries.len() != expected {
            return Err(parse_err(format!(
                "field `{path}.entries` has {} values, expected {domain}^{} = {expected}",
                entries.len(),
                vars.len()
            )));
        }
        let values = entries
            .iter()
            .enumerate()
            .map(|(j, v)| match v {
                Value::Null => Ok(None),
                _ => rational(v, &format!("{path}.entries[{j}]")).map(|r| Some(r / Ratio::from_integer(scale))),
            })
            .collect::<Result<Vec<_>>>()?;
        parsed.push((vars, values));
    }

    let scale = parsed
        .iter()
        .flat_map(|(_, vals)| vals.iter().flatten())
        .fold(1i64, |acc, r| acc.lcm(r.denom()));
    let factors = parsed
        .into_iter()
        .enumerate()
        .map(|(i, (vars, vals))| {
            // Reorder into sorted label order; the file lists entries
            // row-major in its own `vars` order.
            let dims = vec![domain; vars.len()];
            let data = vals
                .into_iter()
                .map(|v| v.map_or(Trop::Infinity, |r| Trop::Finite((r * Ratio::from_integer(scale)).to_integer())))
                .collect();
            let mut seen = vars.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != vars.len() {
                return Err(parse_err(format!("field `factors[{i}].vars` repeats a variable")));
            }
            TropTensor::new(vars, dims, data).map_err(|e| parse_err(format!("factors[{i}]: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let network = FactorNetwork::new(n, domain, factors)?;
    Ok(ScaledNetwork { network, scale })
}

fn parse_chain(obj: &Map<String, Value>) -> Result<ChainBellSpec> {
    let n = match field(obj, "n")? {
        Value::String(s) if s == "inf" || s == "infinite" => ChainLength::Infinite,
        v => ChainLength::Finite(count(v, "n").map_err(|_| parse_err("field `n` must be an integer or \"inf\""))?),
    };
    let inputs = count(field(obj, "inputs")?, "inputs")?;
    let range = count(field(obj, "range")?, "range")?;
    let one_body = array(field(obj, "one_body")?, "one_body")?
        .iter()
        .enumerate()
        .map(|(k, v)| rational(v, &format!("one_body[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    let tb = field(obj, "two_body")?
        .as_object()
        .ok_or_else(|| parse_err("field `two_body` must be an object keyed by distance"))?;
    let zero_table = || vec![vec![Ratio::from_integer(0); inputs]; inputs];
    let mut two_body = vec![zero_table(); range];
    for (key, table) in tb {
        let dist: usize = key
            .parse()
            .map_err(|_| parse_err(format!("field `two_body`: key `{key}` is not a distance")))?;
        if dist == 0 || dist > range {
            return Err(parse_err(format!("field `two_body`: distance {dist} outside 1..={range}")));
        }
        let path = format!("two_body.{key}");
        two_body[dist - 1] = array(table, &path)?
            .iter()
            .enumerate()
            .map(|(k, row)| {
                array(row, &format!("{path}[{k}]"))?
                    .iter()
                    .enumerate()
                    .map(|(l, v)| rational(v, &format!("{path}[{k}][{l}]")))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
    }
    let boundary = match field(obj, "boundary")?.as_str() {
        Some("obc") => BoundaryCondition::Open,
        Some("pbc") => BoundaryCondition::Periodic,
        _ => return Err(parse_err("field `boundary` must be \"obc\" or \"pbc\"")),
    };
    let translation_invariant = match obj.get("translation_invariant") {
        None => true,
        Some(v) => v
            .as_bool()
            .ok_or_else(|| parse_err("field `translation_invariant` must be a boolean"))?,
    };
    let spec = ChainBellSpec {
        n,
        inputs,
        range,
        one_body,
        two_body,
        boundary,
        translation_invariant,
    };
    spec.validate().map_err(|e| parse_err(e.to_string()))?;
    Ok(spec)
}

fn parse_modular(obj: &Map<String, Value>) -> Result<ModularBellSpec> {
    let d = count(field(obj, "d")?, "d")?;
    let m = count(field(obj, "m")?, "m")?;
    let alpha = match obj.get("alpha") {
        Some(Value::String(s)) if s == "cglmp" => crate::bell::cglmp_alpha(d)?,
        Some(v) => array(v, "alpha")?
            .iter()
            .enumerate()
            .map(|(k, v)| rational(v, &format!("alpha[{k}]")))
            .collect::<Result<Vec<_>>>()?,
        None => return Err(parse_err("missing field `alpha`")),
    };
    ModularBellSpec::new(d, m, alpha).map_err(|e| parse_err(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3").unwrap(), Ratio::from_integer(3));
        assert_eq!(parse_rational("-3/6").unwrap(), Ratio::new(-1, 2));
        assert_eq!(parse_rational("0.25").unwrap(), Ratio::new(1, 4));
        assert_eq!(parse_rational("-1.5e1").unwrap(), Ratio::from_integer(-15));
        assert_eq!(parse_rational("2e-2").unwrap(), Ratio::new(1, 50));
        assert_eq!(parse_rational(".5").unwrap(), Ratio::new(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn decimals() {
        let f = |p, q| format_decimal(Ratio::new(p, q));
        assert_eq!(f(0, 1), "0");
        assert_eq!(f(-4, 1), "-4");
        assert_eq!(f(3, 2), "1.5");
        assert_eq!(f(1, 3), "0.333333333333");
        assert_eq!(f(2, 3), "0.666666666667");
        assert_eq!(f(-1, 300), "-0.00333333333333");
        assert_eq!(f(1234567890123456, 1), "1234567890120000");
        assert_eq!(f(999999999999999, 1000), "1000000000000");
        assert_eq!(f(9999999999999, 10000000000000000), "0.001");
    }

    proptest! {
        #[test]
        fn decimal_agrees_with_exact(p in -10_000_000i64..10_000_000, q in 1i64..100_000) {
            let r = Ratio::new(p, q);
            let text = format_decimal(r);
            let back = parse_rational(&text).unwrap();
            // |back - r| <= |r| / 10^11, cross-multiplied in i128
            let (a, b) = (*back.numer() as i128, *back.denom() as i128);
            let (p, q) = (p as i128, q as i128);
            prop_assert!((a * q - p * b).abs() * 100_000_000_000 <= p.abs() * b, "{} rendered as {}", r, text);
        }

        #[test]
        fn rational_roundtrip(p in any::<i32>(), q in 1i32..i32::MAX) {
            let r = Ratio::new(p as i64, q as i64);
            prop_assert_eq!(parse_rational(&format_rational(r)).unwrap(), r);
        }
    }

    #[test]
    fn network_file() {
        let text = r#"{"n": 3, "domain": 2, "factors": [
            {"vars": [1, 0], "entries": [0, 1, 2, null], "scale": 2},
            {"vars": [1, 2], "entries": ["1/3", 0, 0, 0]}
        ]}"#;
        let SpecFile::Network(net) = SpecFile::parse(text).unwrap() else { panic!() };
        assert_eq!(net.scale, 6);
        assert_eq!(net.network.factors()[0].labels(), &[0, 1]);
        // f(x0=1, x1=0) was listed at position (x1=0, x0=1) -> 1/2
        assert_eq!(net.network.factors()[0].get(&[1, 0]), Trop::Finite(3));
        assert_eq!(net.network.factors()[0].get(&[1, 1]), Trop::Infinity);
        let again = SpecFile::parse(&net.to_json().to_string()).unwrap();
        assert_eq!(again, SpecFile::Network(net));
    }

    #[test]
    fn chain_and_modular_files() {
        let chain = r#"{"type": "chain", "n": "inf", "inputs": 1, "range": 1,
            "one_body": [0], "two_body": {"1": [[1]]}, "boundary": "pbc"}"#;
        let SpecFile::Chain(spec) = SpecFile::parse(chain).unwrap() else { panic!() };
        assert_eq!(spec.n, ChainLength::Infinite);
        let modular = r#"{"type": "modular", "d": 3, "m": 2, "alpha": ["1", "0", "-1"]}"#;
        let SpecFile::Modular(spec) = SpecFile::parse(modular).unwrap() else { panic!() };
        assert_eq!(spec, ModularBellSpec::cglmp(3, 2).unwrap());
    }

    #[test]
    fn diagnostics() {
        let msg = |t: &str| SpecFile::parse(t).unwrap_err().to_string();
        assert!(msg("{\"n\": 3,\n \"domain\": }").contains("line 2"));
        assert!(msg(r#"{"n": 2, "domain": 2, "factors": [{"vars": [0, 1], "entries": [0, 1]}]}"#)
            .contains("factors[0].entries"));
        assert!(msg(r#"{"type": "chain", "n": 4, "inputs": 1, "range": 1, "one_body": [0],
            "two_body": {"1": [[1]]}, "boundary": "xyz"}"#)
            .contains("boundary"));
        assert!(msg(r#"{"type": "modular", "d": 3, "m": 2, "alpha": ["1", "x", "-1"]}"#).contains("alpha[1]"));
        assert!(msg(r#"{"type": "torus"}"#).contains("torus"));
    }
}

//! Text format for stabilizer codes and family specifications.

use std::collections::BTreeMap;
use std::path::Path;

use super::families::{bb_preset, gen_bb, gen_color, gen_hp, gen_surface, repetition};
use super::StabilizerCode;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec, PauliVector};

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn parse_bits(text: &str, line: usize) -> Result<Vec<bool>> {
    let mut bits = Vec::new();
    for (i, ch) in text.chars().enumerate() {
        match ch {
            '0' => bits.push(false),
            '1' => bits.push(true),
            c if c.is_whitespace() => {}
            c => return Err(parse_err(line, i + 1, format!("expected 0 or 1, found {c:?}"))),
        }
    }
    Ok(bits)
}

/// Parses the code file format. See `docs/formats.md`.
pub fn parse_code(text: &str) -> Result<StabilizerCode> {
    let mut name = String::from("code");
    let mut distance = None;
    let mut body: Vec<(usize, &str)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(v) = comment.strip_prefix("name:") {
                name = v.trim().to_string();
            } else if let Some(v) = comment.strip_prefix("distance:") {
                distance = Some(v.trim().parse::<usize>().map_err(|e| {
                    parse_err(line_no, 1, format!("bad distance: {e}"))
                })?);
            }
            continue;
        }
        if !line.is_empty() {
            body.push((line_no, line));
        }
    }
    let Some(&(first_line, first)) = body.first() else {
        return Err(parse_err(1, 1, "missing header"));
    };
    let code = if first.eq_ignore_ascii_case("HX:") {
        parse_css_blocks(&body, &name)?
    } else {
        let fields: Vec<&str> = first.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(parse_err(first_line, 1, "header must be `n m css`"));
        }
        let num = |s: &str, col: usize| {
            s.parse::<usize>()
                .map_err(|e| parse_err(first_line, col, format!("bad header field: {e}")))
        };
        let n = num(fields[0], 1)?;
        let m = num(fields[1], 2)?;
        let css = match fields[2] {
            "0" => false,
            "1" => true,
            _ => return Err(parse_err(first_line, 3, "css flag must be 0 or 1")),
        };
        let rows = &body[1..];
        if rows.len() != m {
            return Err(parse_err(
                first_line,
                2,
                format!("header declares {m} generators, found {}", rows.len()),
            ));
        }
        let mut gens = Vec::with_capacity(m);
        for &(line_no, row) in rows {
            let bits = parse_bits(row, line_no)?;
            if bits.len() != 2 * n {
                return Err(parse_err(
                    line_no,
                    1,
                    format!("expected {} bits, found {}", 2 * n, bits.len()),
                ));
            }
            let p = PauliVector::from_symplectic(&BitVec::from_bools(&bits));
            if css && !(p.is_pure_x() || p.is_pure_z()) {
                return Err(parse_err(line_no, 1, "CSS code row mixes X and Z"));
            }
            gens.push(p);
        }
        StabilizerCode::new(name, n, gens)?
    };
    Ok(code.with_distance(distance))
}

fn parse_css_blocks(body: &[(usize, &str)], name: &str) -> Result<StabilizerCode> {
    let mut hx: Vec<Vec<bool>> = Vec::new();
    let mut hz: Vec<Vec<bool>> = Vec::new();
    let mut in_z = false;
    let mut n = None;
    for &(line_no, line) in &body[1..] {
        if line.eq_ignore_ascii_case("HZ:") {
            if in_z {
                return Err(parse_err(line_no, 1, "duplicate HZ: block"));
            }
            in_z = true;
            continue;
        }
        let bits = parse_bits(line, line_no)?;
        match n {
            None => n = Some(bits.len()),
            Some(w) if w != bits.len() => {
                return Err(parse_err(
                    line_no,
                    1,
                    format!("expected {w} bits, found {}", bits.len()),
                ))
            }
            _ => {}
        }
        if in_z {
            hz.push(bits);
        } else {
            hx.push(bits);
        }
    }
    if !in_z {
        return Err(parse_err(body[0].0, 1, "missing HZ: block"));
    }
    let n = n.unwrap_or(0);
    let to_matrix =
        |rows: Vec<Vec<bool>>| BitMatrix::from_rows(n, rows.iter().map(|r| BitVec::from_bools(r)).collect());
    StabilizerCode::from_css(name.to_string(), to_matrix(hx), to_matrix(hz))
}

/// Writes a code in the header-plus-rows form.
pub fn serialize_code(code: &StabilizerCode) -> String {
    let mut out = String::new();
    out.push_str(&format!("# name: {}\n", code.name()));
    if let Some(d) = code.declared_distance() {
        out.push_str(&format!("# distance: {d}\n"));
    }
    out.push_str(&format!(
        "{} {} {}\n",
        code.n(),
        code.num_generators(),
        u8::from(code.is_css())
    ));
    for g in code.generators() {
        out.push_str(&g.to_symplectic().to_string());
        out.push('\n');
    }
    out
}

pub fn read_code(path: impl AsRef<Path>) -> Result<StabilizerCode> {
    parse_code(&std::fs::read_to_string(path)?)
}

pub fn write_code(code: &StabilizerCode, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, serialize_code(code))?;
    Ok(())
}

/// A code family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Surface { d: usize },
    Color { d: usize },
    BbPreset { n: usize },
    Bb {
        l: usize,
        m: usize,
        a: Vec<(usize, usize)>,
        b: Vec<(usize, usize)>,
    },
    Hp { rep1: usize, rep2: usize },
}

impl FamilySpec {
    pub fn build(&self) -> Result<StabilizerCode> {
        match self {
            FamilySpec::Surface { d } => gen_surface(*d),
            FamilySpec::Color { d } => gen_color(*d),
            FamilySpec::BbPreset { n } => bb_preset(*n),
            FamilySpec::Bb { l, m, a, b } => gen_bb(*l, *m, a, b),
            FamilySpec::Hp { rep1, rep2 } => {
                gen_hp(&repetition(*rep1)?, &repetition(*rep2)?)
            }
        }
    }

    fn from_params(family: &str, params: &BTreeMap<String, String>) -> Result<Self> {
        let get = |key: &str| -> Result<usize> {
            let v = params
                .get(key)
                .ok_or_else(|| Error::param(format!("family {family} needs `{key}`")))?;
            v.parse::<usize>()
                .map_err(|e| Error::param(format!("bad value for `{key}`: {e}")))
        };
        match family {
            "surface" => Ok(FamilySpec::Surface { d: get("d")? }),
            "color" => Ok(FamilySpec::Color { d: get("d")? }),
            "bb" => {
                if params.contains_key("preset") {
                    Ok(FamilySpec::BbPreset { n: get("preset")? })
                } else {
                    let poly = |key: &str| -> Result<Vec<(usize, usize)>> {
                        parse_polynomial(params.get(key).ok_or_else(|| {
                            Error::param(format!("family bb needs `preset` or `{key}`"))
                        })?)
                    };
                    Ok(FamilySpec::Bb {
                        l: get("l")?,
                        m: get("m")?,
                        a: poly("a")?,
                        b: poly("b")?,
                    })
                }
            }
            "hp" => {
                if params.contains_key("rep") {
                    let r = get("rep")?;
                    Ok(FamilySpec::Hp { rep1: r, rep2: r })
                } else {
                    Ok(FamilySpec::Hp {
                        rep1: get("rep1")?,
                        rep2: get("rep2")?,
                    })
                }
            }
            other => Err(Error::param(format!("unknown code family `{other}`"))),
        }
    }

    /// Reads a TOML family file with a `family` key plus parameters.
    pub fn from_toml(text: &str) -> Result<Self> {
        let table: toml::Table = text
            .parse()
            .map_err(|e: toml::de::Error| Error::param(format!("family spec: {e}")))?;
        let mut params = BTreeMap::new();
        let mut family = None;
        for (k, v) in table {
            let s = match v {
                toml::Value::String(s) => s,
                toml::Value::Integer(i) => i.to_string(),
                other => {
                    return Err(Error::param(format!(
                        "family spec value for `{k}` must be a string or integer, got {other}"
                    )))
                }
            };
            if k == "family" {
                family = Some(s);
            } else {
                params.insert(k, s);
            }
        }
        let family = family.ok_or_else(|| Error::param("family spec needs a `family` key"))?;
        FamilySpec::from_params(&family, &params)
    }
}

/// Parses `family:key=value,key=value`, e.g. `surface:d=5` or
/// `bb:preset=72`.
pub fn parse_family_spec(spec: &str) -> Result<FamilySpec> {
    let (family, rest) = spec
        .split_once(':')
        .ok_or_else(|| Error::param(format!("family spec `{spec}` needs `family:params`")))?;
    let mut params = BTreeMap::new();
    for kv in rest.split(',').filter(|s| !s.trim().is_empty()) {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::param(format!("expected key=value, got `{kv}`")))?;
        params.insert(k.trim().to_string(), v.trim().to_string());
    }
    FamilySpec::from_params(family.trim(), &params)
}

/// Parses a bivariate polynomial such as `x^3+y+y^2` or `1+x2+x7` into
/// exponent pairs.
fn parse_polynomial(text: &str) -> Result<Vec<(usize, usize)>> {
    let mut terms = Vec::new();
    for term in text.split('+') {
        let term: String = term.chars().filter(|c| !c.is_whitespace() && *c != '*' && *c != '^').collect();
        if term.is_empty() {
            return Err(Error::param(format!("empty term in polynomial `{text}`")));
        }
        if term == "1" {
            terms.push((0, 0));
            continue;
        }
        let (mut i, mut j) = (0, 0);
        let chars: Vec<char> = term.chars().collect();
        let mut pos = 0;
        while pos < chars.len() {
            let var = chars[pos];
            pos += 1;
            let start = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let exp = if start == pos {
                1
            } else {
                chars[start..pos].iter().collect::<String>().parse::<usize>().unwrap()
            };
            match var {
                'x' => i += exp,
                'y' => j += exp,
                other => {
                    return Err(Error::param(format!(
                        "unexpected variable {other:?} in polynomial `{text}`"
                    )))
                }
            }
        }
        terms.push((i, j));
    }
    Ok(terms)
}

/// Resolves `--code` arguments: an inline family spec, a `.toml` family
/// file, or a code file.
pub fn load_code(spec: &str) -> Result<StabilizerCode> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        if path.extension().is_some_and(|e| e == "toml") {
            return FamilySpec::from_toml(&text)?.build();
        }
        return parse_code(&text);
    }
    if spec.contains(':') {
        return parse_family_spec(spec)?.build();
    }
    Err(Error::param(format!(
        "`{spec}` is neither a file nor a family spec"
    )))
}

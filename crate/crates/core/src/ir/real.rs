//! Reader and writer for the RevLib `.real` circuit format.
//!
//! Besides the RevLib gate tokens (`t<k>`, `f<k>`, `p3`, `v`, `v+`) the
//! dialect accepts `h` for Hadamard, `r<k>`/`r<k>+` for (controlled) roots of
//! NOT and `q<k>` for (controlled) phase rotations, so that every circuit this
//! crate produces can be written out and read back.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::circuit::{Circuit, Line};
use super::gate::{Gate, GateKind};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown gate `{token}`")]
    UnknownGate { line: usize, token: String },
    #[error("line {line}: unknown variable `{name}`")]
    UnknownVariable { line: usize, name: String },
    #[error("line {line}: {msg}")]
    OutOfRange { line: usize, msg: String },
}

/// Result of a successful parse together with non-fatal diagnostics.
#[derive(Debug, Clone)]
pub struct Parsed {
    pub circuit: Circuit,
    pub warnings: Vec<String>,
}

pub fn parse_real(text: &str) -> Result<Circuit, ParseError> {
    parse_real_with_warnings(text).map(|p| p.circuit)
}

pub fn parse_real_with_warnings(text: &str) -> Result<Parsed, ParseError> {
    let mut warnings = Vec::new();
    let mut version = "2.0".to_string();
    let mut numvars: Option<usize> = None;
    let mut variables: Option<Vec<String>> = None;
    let mut inputs: Option<Vec<String>> = None;
    let mut outputs: Option<Vec<String>> = None;
    let mut constants: Option<(usize, String)> = None;
    let mut garbage: Option<(usize, String)> = None;
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut gates = Vec::new();
    let mut in_body = false;
    let mut ended = false;

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if ended {
            warnings.push(format!("line {lineno}: content after .end ignored"));
            continue;
        }
        let mut words = content.split_whitespace();
        let head = words.next().unwrap_or_default();
        let rest: Vec<&str> = words.collect();

        if let Some(directive) = head.strip_prefix('.') {
            let directive = directive.to_ascii_lowercase();
            match directive.as_str() {
                "version" => version = rest.join(" "),
                "numvars" => {
                    let v = rest.first().and_then(|s| s.parse().ok()).ok_or_else(|| {
                        ParseError::Syntax { line: lineno, msg: ".numvars expects a count".into() }
                    })?;
                    numvars = Some(v);
                }
                "variables" => {
                    let vars: Vec<String> = rest.iter().map(|s| s.to_string()).collect();
                    for (k, v) in vars.iter().enumerate() {
                        if index.insert(v.clone(), k).is_some() {
                            return Err(ParseError::Syntax {
                                line: lineno,
                                msg: format!("variable `{v}` declared twice"),
                            });
                        }
                    }
                    variables = Some(vars);
                }
                "inputs" => inputs = Some(rest.iter().map(|s| s.to_string()).collect()),
                "outputs" => outputs = Some(rest.iter().map(|s| s.to_string()).collect()),
                "constants" => constants = Some((lineno, rest.concat())),
                "garbage" => garbage = Some((lineno, rest.concat())),
                "begin" => {
                    if variables.is_none() {
                        return Err(ParseError::Syntax {
                            line: lineno,
                            msg: ".begin before .variables".into(),
                        });
                    }
                    in_body = true;
                }
                "end" => {
                    if !in_body {
                        return Err(ParseError::Syntax { line: lineno, msg: ".end without .begin".into() });
                    }
                    in_body = false;
                    ended = true;
                }
                other => warnings.push(format!("line {lineno}: unknown directive .{other} ignored")),
            }
            continue;
        }

        if !in_body {
            return Err(ParseError::Syntax {
                line: lineno,
                msg: format!("gate `{head}` outside .begin/.end"),
            });
        }
        let mut args = Vec::with_capacity(rest.len());
        for name in &rest {
            let l = *index.get(*name).ok_or_else(|| ParseError::UnknownVariable {
                line: lineno,
                name: name.to_string(),
            })?;
            args.push(l);
        }
        let gate = gate_from_token(head, args, lineno)?;
        let n = variables.as_ref().map_or(0, Vec::len);
        gate.validate(n).map_err(|msg| ParseError::OutOfRange { line: lineno, msg })?;
        gates.push(gate);
    }

    if in_body {
        return Err(ParseError::Syntax { line: text.lines().count(), msg: "missing .end".into() });
    }
    let variables = variables.ok_or(ParseError::Syntax { line: 0, msg: "missing .variables".into() })?;
    let n = variables.len();
    if let Some(nv) = numvars {
        if nv != n {
            return Err(ParseError::Syntax {
                line: 0,
                msg: format!(".numvars {nv} but {n} variables declared"),
            });
        }
    }
    let per_line = |spec: Option<Vec<String>>, what: &str| -> Result<Vec<String>, ParseError> {
        match spec {
            None => Ok(variables.clone()),
            Some(v) if v.len() == n => Ok(v),
            Some(v) => Err(ParseError::Syntax {
                line: 0,
                msg: format!("{what} lists {} names for {n} lines", v.len()),
            }),
        }
    };
    let inputs = per_line(inputs, ".inputs")?;
    let outputs = per_line(outputs, ".outputs")?;
    let flags = |spec: Option<(usize, String)>, what: &str| -> Result<Vec<char>, ParseError> {
        match spec {
            None => Ok(vec!['-'; n]),
            Some((line, s)) => {
                let chars: Vec<char> = s.chars().collect();
                if chars.len() == n {
                    Ok(chars)
                } else {
                    Err(ParseError::Syntax { line, msg: format!("{what} has {} flags for {n} lines", chars.len()) })
                }
            }
        }
    };
    let constants = flags(constants, ".constants")?;
    let garbage = flags(garbage, ".garbage")?;

    let lines = (0..n)
        .map(|k| Line {
            label: variables[k].clone(),
            input: inputs[k].clone(),
            output: outputs[k].clone(),
            constant: match constants[k] {
                '-' => None,
                c => Some(c),
            },
            garbage: garbage[k] == '1',
        })
        .collect();
    Ok(Parsed { circuit: Circuit { version, lines, gates }, warnings })
}

fn gate_from_token(token: &str, args: Vec<usize>, line: usize) -> Result<Gate, ParseError> {
    let unknown = || ParseError::UnknownGate { line, token: token.to_string() };
    let arity = |expected: usize| -> Result<(), ParseError> {
        if args.len() == expected {
            Ok(())
        } else {
            Err(ParseError::Syntax {
                line,
                msg: format!("`{token}` expects {expected} lines, got {}", args.len()),
            })
        }
    };
    let lower = token.to_ascii_lowercase();
    let (lower, dagger) = match lower.strip_suffix('+') {
        Some(d) => (d, true),
        None => (lower.as_str(), false),
    };
    let (stem, digits) = lower.split_at(lower.find(|c: char| c.is_ascii_digit()).unwrap_or(lower.len()));
    let number: Option<u8> = if digits.is_empty() { None } else { Some(digits.parse().map_err(|_| unknown())?) };

    match (stem, number, dagger) {
        ("t", Some(k), false) => {
            arity(k as usize)?;
            if k == 0 {
                return Err(unknown());
            }
            let (controls, target) = args.split_at(args.len() - 1);
            Ok(Gate::toffoli(controls.to_vec(), target[0]))
        }
        ("f", Some(k), false) => {
            arity(k as usize)?;
            if k < 2 {
                return Err(unknown());
            }
            let (controls, targets) = args.split_at(args.len() - 2);
            Ok(Gate::fredkin(controls.to_vec(), targets[0], targets[1]))
        }
        ("p", Some(3), false) => {
            arity(3)?;
            Ok(Gate::peres(args[0], args[1], args[2]))
        }
        ("v", None, dagger) => match (args.len(), dagger) {
            (1, false) => Ok(Gate::root(2, args[0])),
            (2, false) => Ok(Gate::cv(args[0], args[1])),
            (2, true) => Ok(Gate::cv_dag(args[0], args[1])),
            _ => Err(ParseError::Syntax { line, msg: format!("`{token}` with {} lines", args.len()) }),
        },
        ("h", None, false) => {
            arity(1)?;
            Ok(Gate::hadamard(args[0]))
        }
        ("r", Some(k), dagger) if k >= 1 => match (args.len(), dagger) {
            (1, false) => Ok(Gate::root(k, args[0])),
            (2, false) => Ok(Gate::croot(k, args[0], args[1])),
            (2, true) => Ok(Gate::croot_dag(k, args[0], args[1])),
            _ => Err(ParseError::Syntax { line, msg: format!("`{token}` with {} lines", args.len()) }),
        },
        ("q", Some(k), false) => match args.len() {
            1 => Ok(Gate::phase(k, args[0])),
            2 => Ok(Gate::cphase(k, args[0], args[1])),
            _ => Err(ParseError::Syntax { line, msg: format!("`{token}` with {} lines", args.len()) }),
        },
        _ => Err(unknown()),
    }
}

fn gate_token(g: &Gate) -> String {
    match g.kind {
        GateKind::Toffoli | GateKind::Not | GateKind::Cnot => format!("t{}", g.qubit_count()),
        GateKind::Fredkin | GateKind::Swap => format!("f{}", g.qubit_count()),
        GateKind::Peres => "p3".into(),
        GateKind::Cv => "v".into(),
        GateKind::CvDag => "v+".into(),
        GateKind::Hadamard => "h".into(),
        GateKind::Root(k) | GateKind::CRoot(k) => format!("r{k}"),
        GateKind::CRootDag(k) => format!("r{k}+"),
        GateKind::Phase(k) | GateKind::CPhase(k) => format!("q{k}"),
    }
}

pub fn write_real(c: &Circuit) -> String {
    let mut out = String::new();
    let names = |f: fn(&Line) -> &String| c.lines.iter().map(f).cloned().collect::<Vec<_>>().join(" ");
    let _ = writeln!(out, ".version {}", c.version);
    let _ = writeln!(out, ".numvars {}", c.n());
    let _ = writeln!(out, ".variables {}", names(|l| &l.label));
    let _ = writeln!(out, ".inputs {}", names(|l| &l.input));
    let _ = writeln!(out, ".outputs {}", names(|l| &l.output));
    let constants: String = c.lines.iter().map(|l| l.constant.unwrap_or('-')).collect();
    let garbage: String = c.lines.iter().map(|l| if l.garbage { '1' } else { '-' }).collect();
    let _ = writeln!(out, ".constants {constants}");
    let _ = writeln!(out, ".garbage {garbage}");
    out.push_str(".begin\n");
    for g in &c.gates {
        out.push_str(&gate_token(g));
        for l in g.lines() {
            out.push(' ');
            out.push_str(&c.lines[l].label);
        }
        out.push('\n');
    }
    out.push_str(".end\n");
    out
}

//! Line-oriented circuit format.
//!
//! ```text
//! file    := line*
//! line    := ws (header | op)? ws comment?
//! header  := "qubits=" uint
//! op      := KIND ws+ qubit ("," qubit)* (";theta=" float)?
//! comment := "#" any*
//! ```
//!
//! The header must precede every op. Kind names are case-insensitive.

use super::{Circuit, GateKind, GateOp};
use crate::error::{Error, Result};

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("qubits=") {
            if circuit.is_some() {
                return Err(Error::parse(line_no, "duplicate qubits header"));
            }
            let n: usize = rest
                .trim()
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad qubit count {:?}", rest.trim())))?;
            circuit = Some(Circuit::new(n).map_err(|e| Error::parse(line_no, e.to_string()))?);
            continue;
        }
        let c = circuit
            .as_mut()
            .ok_or_else(|| Error::parse(line_no, "op before qubits header"))?;
        let op = parse_op(line).map_err(|m| Error::parse(line_no, m))?;
        c.push(op).map_err(|e| Error::parse(line_no, e.to_string()))?;
    }
    circuit.ok_or_else(|| Error::parse(0, "missing qubits header"))
}

fn parse_op(line: &str) -> std::result::Result<GateOp, String> {
    let (body, angle) = match line.split_once(';') {
        Some((b, a)) => {
            let value = a
                .trim()
                .strip_prefix("theta=")
                .ok_or_else(|| format!("expected theta=, got {:?}", a.trim()))?
                .trim();
            let t: f64 = value.parse().map_err(|_| format!("bad angle {value:?}"))?;
            if !t.is_finite() {
                return Err(format!("angle {value:?} is not finite"));
            }
            (b, Some(t))
        }
        None => (line, None),
    };
    let body = body.trim();
    let (name, args) = body
        .split_once(char::is_whitespace)
        .ok_or_else(|| format!("expected `KIND qubits`, got {body:?}"))?;
    let kind = GateKind::from_name(name, angle).map_err(|e| e.to_string())?;
    let qubits = args
        .split(',')
        .map(|q| {
            q.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad qubit {:?}", q.trim()))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    GateOp::new(kind, qubits).map_err(|e| e.to_string())
}

/// Serializes a circuit; angles use the shortest round-trip float form.
pub fn to_text(c: &Circuit) -> String {
    let mut out = format!("qubits={}\n", c.n());
    for op in c.ops() {
        out.push_str(&op.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ops_comments_and_angles() {
        let text = "# demo\nqubits=3\nCNOT 0,1\nrzz 1, 2;theta=0.5 # trailing\n\nH 2\n";
        let c = parse_circuit(text).unwrap();
        assert_eq!(c.n(), 3);
        assert_eq!(c.len(), 3);
        assert_eq!(c.ops()[1].kind, GateKind::Rzz(0.5));
        assert_eq!(c.ops()[1].qubits, vec![1, 2]);
    }

    #[test]
    fn round_trip() {
        let text = "qubits=2\nRZ 0;theta=-0.123456789012345\nXCZ 1,0;theta=3.141592653589793\nCZ 0,1\n";
        let c = parse_circuit(text).unwrap();
        assert_eq!(to_text(&c), text);
        assert_eq!(parse_circuit(&to_text(&c)).unwrap(), c);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("CNOT 0,1\n", 1),
            ("qubits=2\nFOO 0\n", 2),
            ("qubits=2\nCNOT 0,2\n", 2),
            ("qubits=2\n\nRZ 0\n", 3),
            ("qubits=2\nH 0;theta=1\n", 2),
            ("qubits=2\nRZ 0;theta=nan\n", 2),
            ("qubits=x\n", 1),
            ("", 0),
        ];
        for (text, line) in cases {
            match parse_circuit(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }
}

//! Text and JSON encodings.
//!
//! Text: whitespace-separated tokens `<id><H|T><+|->[:<label>]` in slot
//! order, where a label is a positive integer or `inf`. A leading `circle:`
//! selects the circle host. Lines starting with `#` are ignored.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Arrow, ArrowId, End, GaussDiagram, Host, Label, Sign};
use crate::error::{Error, Result};

struct Token {
    id: ArrowId,
    end: End,
    sign: Sign,
    label: Option<Label>,
}

fn parse_label(text: &str) -> Option<Label> {
    if text == "inf" || text == "∞" {
        return Some(Label::Infinity);
    }
    match text.parse::<u32>() {
        Ok(k) if k >= 1 => Some(Label::Finite(k)),
        _ => None,
    }
}

fn parse_token(raw: &str) -> Result<Token> {
    let bad = || Error::MalformedToken(raw.to_string());
    let (body, label) = match raw.split_once(':') {
        Some((body, l)) => (body, Some(parse_label(l).ok_or_else(bad)?)),
        None => (raw, None),
    };
    let digits = body.chars().take_while(|c| c.is_ascii_digit()).count();
    let rest: Vec<char> = body[digits..].chars().collect();
    if digits == 0 || rest.len() != 2 {
        return Err(bad());
    }
    let id = body[..digits].parse().map_err(|_| bad())?;
    let end = match rest[0] {
        'H' => End::Head,
        'T' => End::Tail,
        _ => return Err(bad()),
    };
    let sign = match rest[1] {
        '+' => Sign::Plus,
        '-' => Sign::Minus,
        _ => return Err(bad()),
    };
    Ok(Token { id, end, sign, label })
}

/// Parses the text format. Arrow ids are kept as written.
pub fn parse_gauss_code(text: &str) -> Result<GaussDiagram> {
    let body: String = text
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .collect::<Vec<_>>()
        .join(" ");
    let mut body = body.trim();
    let mut host = Host::Line;
    if let Some(rest) = body.strip_prefix("circle:") {
        host = Host::Circle;
        body = rest;
    } else if let Some(rest) = body.strip_prefix("line:") {
        body = rest;
    }
    let tokens = body.split_whitespace().map(parse_token).collect::<Result<Vec<_>>>()?;

    let mut decor: BTreeMap<ArrowId, (Sign, Option<Label>)> = BTreeMap::new();
    for t in &tokens {
        match decor.get(&t.id) {
            None => {
                decor.insert(t.id, (t.sign, t.label));
            }
            Some(&(sign, label)) => {
                if sign != t.sign {
                    return Err(Error::SignMismatch(t.id));
                }
                if label != t.label {
                    return Err(Error::LabelMismatch(t.id));
                }
            }
        }
    }
    let seq: Vec<(ArrowId, End)> = tokens.iter().map(|t| (t.id, t.end)).collect();
    GaussDiagram::from_sequence(host, &seq, |id| decor[&id].0, |id| decor[&id].1)
}

/// Text form of the canonical representative.
pub fn serialize(diagram: &GaussDiagram) -> String {
    let canon = diagram.canonicalize();
    let body = canon
        .slot_table()
        .into_iter()
        .map(|(i, end)| {
            let a = &canon.arrows[i];
            let mut tok = format!(
                "{}{}{}",
                a.id,
                match end {
                    End::Head => 'H',
                    End::Tail => 'T',
                },
                a.sign.symbol()
            );
            if let Some(l) = a.label {
                tok.push(':');
                tok.push_str(&l.to_string());
            }
            tok
        })
        .collect::<Vec<_>>()
        .join(" ");
    match canon.host {
        Host::Line => body,
        Host::Circle if body.is_empty() => "circle:".to_string(),
        Host::Circle => format!("circle: {body}"),
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(self.value() as i8)
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Label::Finite(k) => s.serialize_u32(*k),
            Label::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u32),
            Str(String),
        }
        let raw = Raw::deserialize(d)?;
        let label = match &raw {
            Raw::Int(k) if *k >= 1 => Some(Label::Finite(*k)),
            Raw::Int(_) => None,
            Raw::Str(s) => parse_label(s),
        };
        label.ok_or_else(|| serde::de::Error::custom("label must be a positive integer or \"inf\""))
    }
}

#[derive(Serialize, Deserialize)]
struct JsonArrow {
    id: ArrowId,
    tail: usize,
    head: usize,
    sign: i8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<Label>,
}

#[derive(Serialize, Deserialize)]
struct JsonDiagram {
    host: String,
    arrows: Vec<JsonArrow>,
}

/// JSON form. Arrows are listed by id; ids and slots are written as stored.
pub fn to_json(diagram: &GaussDiagram) -> String {
    let mut arrows: Vec<&Arrow> = diagram.arrows.iter().collect();
    arrows.sort_by_key(|a| a.id);
    let doc = JsonDiagram {
        host: match diagram.host {
            Host::Line => "line",
            Host::Circle => "circle",
        }
        .to_string(),
        arrows: arrows
            .into_iter()
            .map(|a| JsonArrow {
                id: a.id,
                tail: a.tail,
                head: a.head,
                sign: a.sign.value() as i8,
                label: a.label,
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("diagram JSON is always serializable")
}

pub fn from_json(text: &str) -> Result<GaussDiagram> {
    let doc: JsonDiagram = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    let host = match doc.host.as_str() {
        "line" => Host::Line,
        "circle" => Host::Circle,
        other => return Err(Error::Json(format!("unknown host `{other}`"))),
    };
    let arrows = doc
        .arrows
        .into_iter()
        .map(|a| {
            let sign = match a.sign {
                1 => Sign::Plus,
                -1 => Sign::Minus,
                s => return Err(Error::Json(format!("sign must be 1 or -1, got {s}"))),
            };
            Ok(Arrow { id: a.id, tail: a.tail, head: a.head, sign, label: a.label })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut diagram = GaussDiagram::new(host, arrows)?;
    diagram.arrows.sort_by_key(|a| a.id);
    Ok(diagram)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::tests_support::arb_diagram;
    use proptest::prelude::*;

    #[test]
    fn parses_and_prints_trefoil() {
        let t = parse_gauss_code("1T+ 2H+ 3T+ 1H+ 2T+ 3H+").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.host(), Host::Line);
        assert_eq!(serialize(&t), "1T+ 2H+ 3T+ 1H+ 2T+ 3H+");
    }

    #[test]
    fn serialize_renumbers() {
        let t = parse_gauss_code("7T- 3T+ 7H- 3H+").unwrap();
        assert_eq!(serialize(&t), "1T- 2T+ 1H- 2H+");
    }

    #[test]
    fn labels_and_comments() {
        let t = parse_gauss_code("# a comment\n1T+:2 2T-:inf\n# more\n1H+:2 2H-:inf").unwrap();
        assert_eq!(t.arrow(1).unwrap().label, Some(Label::Finite(2)));
        assert_eq!(t.arrow(2).unwrap().label, Some(Label::Infinity));
        assert_eq!(serialize(&t), "1T+:2 2T-:inf 1H+:2 2H-:inf");
    }

    #[test]
    fn empty_inputs() {
        assert!(parse_gauss_code("").unwrap().is_empty());
        let c = parse_gauss_code("circle:").unwrap();
        assert_eq!(c.host(), Host::Circle);
        assert_eq!(serialize(&c), "circle:");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_gauss_code("1X+ 1H+"), Err(Error::MalformedToken(_))));
        assert!(matches!(parse_gauss_code("1T+ 1H"), Err(Error::MalformedToken(_))));
        assert!(matches!(parse_gauss_code("1T+:0 1H+:0"), Err(Error::MalformedToken(_))));
        assert_eq!(parse_gauss_code("1T+ 1T+"), Err(Error::DuplicateEndpoint { id: 1, end: End::Tail }));
        assert_eq!(parse_gauss_code("1T+"), Err(Error::MissingEndpoint(1)));
        assert_eq!(parse_gauss_code("1H+"), Err(Error::MissingEndpoint(1)));
        assert_eq!(parse_gauss_code("1T+ 1H-"), Err(Error::SignMismatch(1)));
        assert_eq!(parse_gauss_code("1T+:1 1H+:2"), Err(Error::LabelMismatch(1)));
    }

    #[test]
    fn json_shape() {
        let t = parse_gauss_code("1T+:3 2T-:inf 1H+:3 2H-:inf").unwrap();
        let j = to_json(&t);
        assert_eq!(
            j,
            r#"{"host":"line","arrows":[{"id":1,"tail":0,"head":2,"sign":1,"label":3},{"id":2,"tail":1,"head":3,"sign":-1,"label":"inf"}]}"#
        );
        assert_eq!(from_json(&j).unwrap(), t);
        assert!(from_json(r#"{"host":"torus","arrows":[]}"#).is_err());
        assert!(from_json(r#"{"host":"line","arrows":[{"id":1,"tail":0,"head":0,"sign":1}]}"#).is_err());
    }

    proptest! {
        #[test]
        fn text_round_trip(d in arb_diagram(7)) {
            let text = serialize(&d);
            let back = parse_gauss_code(&text).unwrap();
            prop_assert_eq!(back.canonicalize(), d.canonicalize());
            prop_assert_eq!(serialize(&back), text);
        }

        #[test]
        fn json_round_trip(d in arb_diagram(7)) {
            let back = from_json(&to_json(&d)).unwrap();
            prop_assert_eq!(to_json(&back), to_json(&d));
            prop_assert_eq!(back.canonicalize(), d.canonicalize());
        }
    }
}

//! PD-code text: `X[a,b,c,d]` tuples, comma separated, optionally wrapped in
//! `PD[...]`. Whitespace is ignored. Each tuple lists arc labels
//! counterclockwise starting at the incoming understrand.

use serde::{Deserialize, Serialize};

use super::{DiagramError, LinkDiagram};

/// Canonical JSON form of a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdJson {
    pub crossings: Vec<[u64; 4]>,
    pub components: Vec<Vec<u64>>,
}

impl From<&LinkDiagram> for PdJson {
    fn from(d: &LinkDiagram) -> Self {
        Self {
            crossings: d.pd_tuples(),
            components: if d.is_round_unknot() {
                vec![Vec::new()]
            } else {
                d.component_labels()
            },
        }
    }
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            chars: text.char_indices().peekable(),
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().map(|&(_, c)| c)
    }

    fn expect(&mut self, want: char) -> Result<(), DiagramError> {
        match self.peek() {
            Some(c) if c == want => {
                self.chars.next();
                Ok(())
            }
            Some(c) => Err(malformed(format!("expected '{want}', found '{c}'"))),
            None => Err(malformed(format!("expected '{want}', found end of input"))),
        }
    }

    fn eat(&mut self, want: char) -> bool {
        if self.peek() == Some(want) {
            self.chars.next();
            true
        } else {
            false
        }
    }

    fn eat_word(&mut self, word: &str) -> bool {
        self.skip_ws();
        let mut probe = self.chars.clone();
        for w in word.chars() {
            match probe.next() {
                Some((_, c)) if c == w => {}
                _ => return false,
            }
        }
        self.chars = probe;
        true
    }

    fn number(&mut self) -> Result<u64, DiagramError> {
        self.skip_ws();
        let mut digits = String::new();
        while let Some(&(_, c)) = self.chars.peek() {
            if c.is_ascii_digit() {
                digits.push(c);
                self.chars.next();
            } else {
                break;
            }
        }
        if digits.is_empty() {
            return Err(match self.peek() {
                Some(c) => malformed(format!("expected a positive integer label, found '{c}'")),
                None => malformed("expected a positive integer label, found end of input".into()),
            });
        }
        let value: u64 = digits
            .parse()
            .map_err(|_| malformed(format!("label {digits} is out of range")))?;
        if value == 0 {
            return Err(malformed("arc labels must be positive".into()));
        }
        Ok(value)
    }
}

fn malformed(msg: String) -> DiagramError {
    DiagramError::MalformedCode(msg)
}

/// Parses PD text into raw tuples without building a diagram.
pub fn parse_pd_tuples(text: &str) -> Result<Vec<[u64; 4]>, DiagramError> {
    let mut cur = Cursor::new(text);
    let wrapped = cur.eat_word("PD");
    if wrapped {
        cur.expect('[')?;
    }
    let mut tuples = Vec::new();
    loop {
        match cur.peek() {
            Some('X') => {
                cur.chars.next();
                cur.expect('[')?;
                let mut t = [0u64; 4];
                for (i, slot) in t.iter_mut().enumerate() {
                    if i > 0 {
                        cur.expect(',')?;
                    }
                    *slot = cur.number()?;
                }
                cur.expect(']')?;
                tuples.push(t);
            }
            Some(c) => return Err(malformed(format!("expected 'X[', found '{c}'"))),
            None => break,
        }
        if !cur.eat(',') {
            break;
        }
    }
    if wrapped {
        cur.expect(']')?;
    }
    if let Some(c) = cur.peek() {
        return Err(malformed(format!("unexpected trailing '{c}'")));
    }
    if tuples.is_empty() {
        return Err(malformed("no crossings".into()));
    }
    Ok(tuples)
}

pub fn parse_pd(text: &str) -> Result<LinkDiagram, DiagramError> {
    LinkDiagram::from_pd(&parse_pd_tuples(text)?)
}

impl LinkDiagram {
    /// `PD[X[a,b,c,d], ...]` with canonical labels.
    pub fn to_pd_string(&self) -> String {
        let body: Vec<String> = self
            .pd_tuples()
            .iter()
            .map(|t| format!("X[{},{},{},{}]", t[0], t[1], t[2], t[3]))
            .collect();
        format!("PD[{}]", body.join(", "))
    }
}

use std::fmt;

use serde::{Deserialize, Serialize};

/// An input variety: the bootstrap line, a prior output, or a Segre
/// product of Veronese re-embeddings of those.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Descriptor {
    P1,
    Out {
        round: usize,
        index: usize,
    },
    Veronese {
        degree: usize,
        inner: Box<Descriptor>,
    },
    Segre(Vec<Descriptor>),
    /// `sl_{k+1}` from `gl_{k-1}` on `U ⊕ U*` (adjoint only).
    SeriesA(usize),
    /// `sp_{2m}` from `sp_{2m-2}` on its standard module (adjoint only).
    SeriesC(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Algorithm {
    Minuscule,
    Adjoint,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Minuscule => "minuscule",
            Algorithm::Adjoint => "adjoint",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{message} at position {position} in {input:?}")]
pub struct ParseError {
    pub input: String,
    pub position: usize,
    pub message: String,
}

impl Descriptor {
    pub fn out(round: usize, index: usize) -> Self {
        Descriptor::Out { round, index }
    }

    pub fn veronese(degree: usize, inner: Descriptor) -> Self {
        Descriptor::Veronese {
            degree,
            inner: Box::new(inner),
        }
    }

    pub fn segre(factors: Vec<Descriptor>) -> Self {
        Descriptor::Segre(factors)
    }

    /// The factors with their Veronese degrees, flattening nested products.
    pub fn factors(&self) -> Vec<(usize, &Descriptor)> {
        match self {
            Descriptor::Segre(fs) => fs.iter().flat_map(|f| f.factors()).collect(),
            Descriptor::Veronese { degree, inner } => vec![(*degree, inner.as_ref())],
            other => vec![(1, other)],
        }
    }

    /// Whether the shape lies within the bounds of the given algorithm:
    /// minuscule needs `r, d_j ≤ 2` with `d_1 = 2 ⇒ r = 1`; adjoint needs
    /// `r, d_j ≤ 3` with `d_1 = 3 ⇒ r = 1` and `d_1 = 2 ⇒ r ≤ 2`.
    pub fn within_bounds(&self, algorithm: Algorithm) -> bool {
        if matches!(self, Descriptor::SeriesA(_) | Descriptor::SeriesC(_)) {
            return algorithm == Algorithm::Adjoint;
        }
        let fs = self.factors();
        let r = fs.len();
        let dmax = fs.iter().map(|(d, _)| *d).max().unwrap_or(1);
        let nested = fs
            .iter()
            .any(|(_, f)| matches!(f, Descriptor::Veronese { .. } | Descriptor::Segre(_)));
        if nested {
            return false;
        }
        match algorithm {
            Algorithm::Minuscule => r <= 2 && dmax <= 2 && (dmax < 2 || r == 1),
            Algorithm::Adjoint => {
                r <= 3 && dmax <= 3 && (dmax < 3 || r == 1) && (dmax < 2 || r <= 2)
            }
        }
    }

    /// Prior outputs referenced anywhere inside.
    pub fn references(&self) -> Vec<(usize, usize)> {
        match self {
            Descriptor::Out { round, index } => vec![(*round, *index)],
            Descriptor::Veronese { inner, .. } => inner.references(),
            Descriptor::Segre(fs) => fs.iter().flat_map(|f| f.references()).collect(),
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::P1 => f.write_str("P1"),
            Descriptor::Out { round, index } => write!(f, "out:{round}/{index}"),
            Descriptor::Veronese { degree, inner } => write!(f, "v{degree}({inner})"),
            Descriptor::Segre(fs) => {
                f.write_str("seg(")?;
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
            Descriptor::SeriesA(k) => write!(f, "A({k})"),
            Descriptor::SeriesC(m) => write!(f, "C({m})"),
        }
    }
}

impl std::str::FromStr for Descriptor {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut p = Parser { input: s, pos: 0 };
        let d = p.descriptor()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(d)
    }
}

struct Parser<'a> {
    input: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ParseError {
        ParseError {
            input: self.input.to_string(),
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn rest(&self) -> &str {
        &self.input[self.pos..]
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += self.rest().chars().next().unwrap().len_utf8();
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {token:?}")))
        }
    }

    fn number(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.error("expected a number"));
        }
        let value = self.rest()[..len]
            .parse()
            .map_err(|_| self.error("number out of range"))?;
        self.pos += len;
        Ok(value)
    }

    fn descriptor(&mut self) -> Result<Descriptor, ParseError> {
        self.skip_ws();
        if self.eat("P1") {
            return Ok(Descriptor::P1);
        }
        if self.eat("out:") {
            let round = self.number()?;
            self.expect("/")?;
            let index = self.number()?;
            return Ok(Descriptor::out(round, index));
        }
        if self.eat("seg(") {
            let mut fs = vec![self.descriptor()?];
            while self.eat(",") {
                fs.push(self.descriptor()?);
            }
            self.expect(")")?;
            if fs.len() < 2 {
                return Err(self.error("a Segre product needs at least two factors"));
            }
            return Ok(Descriptor::segre(fs));
        }
        for (prefix, make) in [
            ("A(", Descriptor::SeriesA as fn(usize) -> Descriptor),
            ("C(", Descriptor::SeriesC),
        ] {
            if self.eat(prefix) {
                let start = self.pos;
                let k = self.number()?;
                if k < 2 {
                    self.pos = start;
                    return Err(self.error("rank must be at least 2"));
                }
                self.expect(")")?;
                return Ok(make(k));
            }
        }
        if self.eat("v") {
            let start = self.pos;
            let degree = self.number()?;
            if degree < 2 {
                self.pos = start;
                return Err(self.error("Veronese degree must be at least 2"));
            }
            self.expect("(")?;
            let inner = self.descriptor()?;
            self.expect(")")?;
            return Ok(Descriptor::veronese(degree, inner));
        }
        Err(self.error("expected P1, out:<round>/<index>, v<d>(...), seg(...), A(k) or C(m)"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in [
            "P1",
            "out:2/13",
            "v2(P1)",
            "v3(out:1/0)",
            "seg(P1,out:1/2)",
            "seg(P1,P1,P1)",
            "seg(v2(P1),P1)",
            "A(3)",
        ] {
            let d: Descriptor = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
        let d: Descriptor = " seg( P1 , v2( out:1/0 ) ) ".parse().unwrap();
        assert_eq!(d.to_string(), "seg(P1,v2(out:1/0))");
    }

    #[test]
    fn error_positions() {
        let e = "seg(P1,Q2)".parse::<Descriptor>().unwrap_err();
        assert_eq!(e.position, 7);
        let e = "v1(P1)".parse::<Descriptor>().unwrap_err();
        assert_eq!(e.position, 1);
        let e = "seg(P1)".parse::<Descriptor>().unwrap_err();
        assert_eq!(e.position, 7);
        let e = "out:1".parse::<Descriptor>().unwrap_err();
        assert_eq!(e.position, 5);
        // Trailing input is reported where it starts, after the spaces.
        let e = "P1 P1".parse::<Descriptor>().unwrap_err();
        assert_eq!(e.position, 3);
    }

    #[test]
    fn bounds() {
        let p = |s: &str| s.parse::<Descriptor>().unwrap();
        assert!(p("seg(P1,P1)").within_bounds(Algorithm::Minuscule));
        assert!(!p("seg(P1,P1,P1)").within_bounds(Algorithm::Minuscule));
        assert!(!p("v3(P1)").within_bounds(Algorithm::Minuscule));
        assert!(!p("seg(v2(P1),P1)").within_bounds(Algorithm::Minuscule));
        assert!(p("seg(P1,P1,P1)").within_bounds(Algorithm::Adjoint));
        assert!(p("v3(P1)").within_bounds(Algorithm::Adjoint));
        assert!(p("seg(v2(P1),P1)").within_bounds(Algorithm::Adjoint));
        assert!(!p("seg(v2(P1),P1,P1)").within_bounds(Algorithm::Adjoint));
        assert!(!p("seg(v3(P1),P1)").within_bounds(Algorithm::Adjoint));
        assert!(!p("A(2)").within_bounds(Algorithm::Minuscule));
    }
}

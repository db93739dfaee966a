//! Nested prefix notation for [`HoloDisk`] trees.
//!
//! ```text
//! expr    := "z"
//!          | "const(" cvec ")"
//!          | "poly(" cvec { "," cvec } ")"        one coefficient list per coordinate,
//!                                                 lowest degree first
//!          | "blaschke(" complex ")"             (z + c)/(1 + conj(c) z)
//!          | "mul(" expr "," expr ")"            first factor scalar
//!          | "add(" expr "," expr ")"
//!          | "smul(" complex "," expr ")"
//!          | "scale(" expr "," "u=" cvec ")"     scalar expr times constant vector u
//!          | "compose(" "phi(a=" cvec ")" "," expr ")"
//! cvec    := "[" complex { "," complex } "]"
//! complex := real [ ("+" | "-") real "i" ] | real "i"
//! ```
//!
//! `real` is a decimal float literal with optional sign and exponent.
//! Whitespace may appear between tokens but not inside a complex literal.
//! Printing uses shortest round-trip float formatting, so
//! `parse(print(F)) == F` exactly.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::disk::{Expr, HoloDisk};
use crate::ball::{BallAutomorphism, CVec};
use crate::error::{Error, Result};
use crate::poly::Poly;

pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{:?}", z.re)
    } else if z.re == 0.0 {
        format!("{:?}i", z.im)
    } else if z.im < 0.0 {
        format!("{:?}-{:?}i", z.re, -z.im)
    } else {
        format!("{:?}+{:?}i", z.re, z.im)
    }
}

fn write_coeffs(f: &mut fmt::Formatter<'_>, coeffs: &[Complex64]) -> fmt::Result {
    write!(f, "[")?;
    for (i, c) in coeffs.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{}", format_complex(*c))?;
    }
    write!(f, "]")
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Z => write!(f, "z"),
            Expr::Const(v) => write!(f, "const({v})"),
            Expr::Poly(coords) => {
                write!(f, "poly(")?;
                for (i, p) in coords.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write_coeffs(f, p.coeffs())?;
                }
                write!(f, ")")
            }
            Expr::Blaschke(c) => write!(f, "blaschke({})", format_complex(*c)),
            Expr::Mul(a, b) => write!(f, "mul({a},{b})"),
            Expr::Add(a, b) => write!(f, "add({a},{b})"),
            Expr::Smul(k, e) => write!(f, "smul({},{e})", format_complex(*k)),
            Expr::Embed(e, u) => write!(f, "scale({e},u={u})"),
            Expr::Compose(aut, e) => write!(f, "compose(phi(a={}),{e})", aut.a()),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset: self.pos, message: message.into() })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
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

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            self.err(format!("expected {token:?}"))
        }
    }

    fn number(&mut self) -> Result<f64> {
        let bytes = self.src.as_bytes();
        let start = self.pos;
        let mut i = self.pos;
        if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            i += 1;
        }
        let digits_start = i;
        while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
            i += 1;
        }
        if i == digits_start {
            return self.err("expected a number");
        }
        if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
            let mut j = i + 1;
            if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                j += 1;
            }
            let exp_start = j;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if j > exp_start {
                i = j;
            }
        }
        match self.src[start..i].parse::<f64>() {
            Ok(v) => {
                self.pos = i;
                Ok(v)
            }
            Err(_) => self.err(format!("invalid number {:?}", &self.src[start..i])),
        }
    }

    fn complex(&mut self) -> Result<Complex64> {
        self.skip_ws();
        let first = self.number()?;
        let bytes = self.src.as_bytes();
        if self.pos < bytes.len() && bytes[self.pos] == b'i' {
            self.pos += 1;
            return Ok(Complex64::new(0.0, first));
        }
        if self.pos < bytes.len() && (bytes[self.pos] == b'+' || bytes[self.pos] == b'-') {
            let second = self.number()?;
            if self.pos < bytes.len() && bytes[self.pos] == b'i' {
                self.pos += 1;
                return Ok(Complex64::new(first, second));
            }
            return self.err("expected 'i' after imaginary part");
        }
        Ok(Complex64::new(first, 0.0))
    }

    fn cvec(&mut self) -> Result<CVec> {
        Ok(CVec::new(self.coeff_list()?))
    }

    fn coeff_list(&mut self) -> Result<Vec<Complex64>> {
        self.expect("[")?;
        let mut out = vec![self.complex()?];
        while self.eat(",") {
            out.push(self.complex()?);
        }
        self.expect("]")?;
        Ok(out)
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest.bytes().take_while(|b| b.is_ascii_alphabetic()).count();
        if len == 0 {
            return self.err("expected an expression");
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn expr(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.pos;
        let name = self.ident()?;
        if name == "z" {
            return Ok(Expr::Z);
        }
        self.expect("(")?;
        let e = match name {
            "const" => Expr::Const(self.cvec()?),
            "poly" => {
                let mut coords = vec![Poly::new(self.coeff_list()?)];
                while self.eat(",") {
                    coords.push(Poly::new(self.coeff_list()?));
                }
                Expr::Poly(coords)
            }
            "blaschke" => Expr::Blaschke(self.complex()?),
            "mul" | "add" => {
                let a = self.expr()?;
                self.expect(",")?;
                let b = self.expr()?;
                if name == "mul" {
                    Expr::mul(a, b)
                } else {
                    Expr::add(a, b)
                }
            }
            "smul" => {
                let k = self.complex()?;
                self.expect(",")?;
                Expr::smul(k, self.expr()?)
            }
            "scale" => {
                let e = self.expr()?;
                self.expect(",")?;
                self.expect("u")?;
                self.expect("=")?;
                Expr::embed(e, self.cvec()?)
            }
            "compose" => {
                self.expect("phi")?;
                self.expect("(")?;
                self.expect("a")?;
                self.expect("=")?;
                let a = self.cvec()?;
                self.expect(")")?;
                self.expect(",")?;
                let inner = self.expr()?;
                let aut = BallAutomorphism::new(a).map_err(|e| Error::Parse { offset: start, message: e.to_string() })?;
                Expr::compose(aut, inner)
            }
            other => {
                self.pos = start;
                return self.err(format!("unknown node {other:?}"));
            }
        };
        self.expect(")")?;
        Ok(e)
    }
}

impl FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Expr> {
        let mut p = Parser { src: s, pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != s.len() {
            return p.err("trailing input");
        }
        Ok(e)
    }
}

impl FromStr for HoloDisk {
    type Err = Error;

    fn from_str(s: &str) -> Result<HoloDisk> {
        HoloDisk::new(s.parse()?)
    }
}

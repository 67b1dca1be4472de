//! Recursive-descent parser for polynomial expressions in `x, y, z`.

use std::collections::BTreeMap;

use dashu_int::IBig;
use dashu_ratio::RBig;

use super::{block_degree, SurfaceEquation};
use crate::binary_forms::BinaryForm;
use crate::error::{Error, Result};
use crate::field::{Field, Gq};

/// Sparse polynomial: exponents of `(x, y, z)` to coefficient.
type Sparse = BTreeMap<[u32; 3], Gq>;

fn constant(c: Gq) -> Sparse {
    let mut p = Sparse::new();
    if !c.is_zero() {
        p.insert([0, 0, 0], c);
    }
    p
}

fn add_into(acc: &mut Sparse, other: &Sparse, sign: &Gq) {
    for (m, c) in other {
        let entry = acc.entry(*m).or_insert_with(Gq::zero);
        *entry += &(c.clone() * sign);
        if entry.is_zero() {
            acc.remove(m);
        }
    }
}

fn mul(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]];
            add_into(&mut out, &constant_at(m, ca.clone() * cb), &Gq::one());
        }
    }
    out
}

fn constant_at(m: [u32; 3], c: Gq) -> Sparse {
    let mut p = Sparse::new();
    p.insert(m, c);
    p
}

fn as_constant(p: &Sparse) -> Option<Gq> {
    match p.len() {
        0 => Some(Gq::zero()),
        1 => p.get(&[0, 0, 0]).cloned(),
        _ => None,
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error<T>(&self, pos: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: pos, message: message.into() })
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn bump(&mut self) -> char {
        let c = self.src[self.pos..].chars().next().expect("peeked");
        self.pos += c.len_utf8();
        c
    }

    fn expr(&mut self) -> Result<Sparse> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.bump();
            let rhs = self.term()?;
            let sign = if c == '+' { Gq::one() } else { Gq::from(-1) };
            add_into(&mut acc, &rhs, &sign);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Sparse> {
        let mut acc = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek() {
            let at = self.pos;
            self.bump();
            let rhs = self.unary()?;
            if c == '*' {
                acc = mul(&acc, &rhs);
            } else {
                match as_constant(&rhs) {
                    Some(d) if !d.is_zero() => acc = mul(&acc, &constant(d.inv())),
                    Some(_) => return self.error(at, "division by zero"),
                    None => return self.error(at, "division is only allowed by constants"),
                }
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Sparse> {
        match self.peek() {
            Some('-') => {
                self.bump();
                let inner = self.unary()?;
                Ok(mul(&inner, &constant(Gq::from(-1))))
            }
            Some('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Sparse> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.bump();
        self.skip_ws();
        let at = self.pos;
        let digits: String = self.src[self.pos..].chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return self.error(at, "expected a nonnegative integer exponent");
        }
        self.pos += digits.len();
        let e: u32 = match digits.parse() {
            Ok(e) if e <= 64 => e,
            _ => return self.error(at, "exponent too large"),
        };
        let mut acc = constant(Gq::one());
        for _ in 0..e {
            acc = mul(&acc, &base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Sparse> {
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            None => self.error(at, "unexpected end of input"),
            Some('(') => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return self.error(self.pos, "expected ')'");
                }
                self.bump();
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => self.number(),
            Some(c) if c.is_alphabetic() || c == '_' => {
                let name: String = self.src[self.pos..]
                    .chars()
                    .take_while(|c| c.is_alphanumeric() || *c == '_')
                    .collect();
                self.pos += name.len();
                match name.as_str() {
                    "x" => Ok(constant_at([1, 0, 0], Gq::one())),
                    "y" => Ok(constant_at([0, 1, 0], Gq::one())),
                    "z" => Ok(constant_at([0, 0, 1], Gq::one())),
                    "i" => Ok(constant(Gq::i())),
                    _ => self.error(at, format!("unknown variable '{name}'")),
                }
            }
            Some(c) => self.error(at, format!("unexpected character '{c}'")),
        }
    }

    fn number(&mut self) -> Result<Sparse> {
        let at = self.pos;
        let text: String = self.src[self.pos..]
            .chars()
            .take_while(|c| c.is_ascii_digit() || *c == '.')
            .collect();
        self.pos += text.len();
        let (int_part, frac_part) = match text.split_once('.') {
            Some((a, b)) => (a, b),
            None => (text.as_str(), ""),
        };
        if (int_part.is_empty() && frac_part.is_empty()) || frac_part.contains('.') {
            return self.error(at, format!("malformed number '{text}'"));
        }
        let digits = format!("{int_part}{frac_part}");
        let num: IBig = digits.parse().map_err(|_| Error::Parse {
            position: at,
            message: format!("malformed number '{text}'"),
        })?;
        let den = IBig::from(10u8).pow(frac_part.len());
        Ok(constant(Gq::real(RBig::from_parts_signed(num, den))))
    }
}

fn parse_sparse(text: &str) -> Result<Sparse> {
    let mut p = Parser { src: text, pos: 0 };
    let value = p.expr()?;
    if let Some(c) = p.peek() {
        return p.error(p.pos, format!("unexpected character '{c}'"));
    }
    Ok(value)
}

fn monomial_text(m: &[u32; 3]) -> String {
    let parts: Vec<String> = ["x", "y", "z"]
        .iter()
        .zip(m)
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Parses `F(x, y, z)`; every monomial must have weighted degree
/// `deg_x + deg_y + 2·deg_z = 10`.
pub fn parse_expression(text: &str) -> Result<SurfaceEquation<Gq>> {
    let poly = parse_sparse(text)?;
    let mut q: [BinaryForm<Gq>; 6] = std::array::from_fn(|k| BinaryForm::zero(block_degree(k)));
    for (m, c) in poly {
        let degree = (m[0] + m[1] + 2 * m[2]) as usize;
        if degree != 10 {
            return Err(Error::WrongDegree { monomial: monomial_text(&m), degree });
        }
        q[m[2] as usize].set_coeff_of_y_power(m[1] as usize, c);
    }
    SurfaceEquation::new(q)
}

/// Parses a constant such as `3/4`, `-1/2+5/3*i`, `2*i` or `0.125`.
pub(crate) fn parse_constant(text: &str) -> Result<Gq> {
    let poly = parse_sparse(text)?;
    as_constant(&poly).ok_or(Error::Parse { position: 0, message: format!("'{text}' is not a constant") })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_blocks() {
        let f = parse_expression("z^5 - 10*y^4*z^3 + 20*y^6*z^2 - 15*y^8*z + 4*y^10").unwrap();
        assert_eq!(*f.leading(), Gq::one());
        assert_eq!(*f.q(3).coeff_of_y_power(4), Gq::from(-10));
        assert_eq!(*f.q(2).coeff_of_y_power(6), Gq::from(20));
        assert_eq!(*f.q(1).coeff_of_y_power(8), Gq::from(-15));
        assert_eq!(*f.q(0).coeff_of_y_power(10), Gq::from(4));
        assert!(f.q(4).is_zero());
    }

    #[test]
    fn expands_products_and_powers() {
        let a = parse_expression("(z - y^2)^4*(z + 4*y^2) + x^10").unwrap();
        let b = parse_expression("z^5 - 10*y^4*z^3 + 20*y^6*z^2 - 15*y^8*z + 4*y^10 + x^10").unwrap();
        assert_eq!(a, b);
        let c = parse_expression("z^5 + (2+3*i)/4*x^10 + 0.5*y^10").unwrap();
        assert_eq!(*c.q(0).coeff_of_y_power(0), Gq::new(RBig::from_parts_signed(1.into(), 2.into()), RBig::from_parts_signed(3.into(), 4.into())));
        assert_eq!(*c.q(0).coeff_of_y_power(10), Gq::ratio(1, 2));
    }

    #[test]
    fn degree_errors_name_the_monomial() {
        assert_eq!(
            parse_expression("z^6 + x^10"),
            Err(Error::WrongDegree { monomial: "z^6".into(), degree: 12 })
        );
        assert!(matches!(parse_expression("z^5 + 1"), Err(Error::WrongDegree { .. })));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(
            parse_expression("z^5 + w*x^9"),
            Err(Error::Parse { position: 6, message: "unknown variable 'w'".into() })
        );
        assert!(matches!(parse_expression("z^5 +"), Err(Error::Parse { position: 5, .. })));
        assert!(matches!(parse_expression("z^5 + x^10/y"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expression("(z^5"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expression("z^5 x^10"), Err(Error::Parse { position: 4, .. })));
    }

    #[test]
    fn constants() {
        assert_eq!(parse_constant("-3/4").unwrap(), Gq::ratio(-3, 4));
        assert_eq!(parse_constant("1/2-1/3*i").unwrap(), Gq::new(RBig::from_parts_signed(1.into(), 2.into()), RBig::from_parts_signed((-1).into(), 3.into())));
        assert_eq!(parse_constant("2*i").unwrap(), Gq::new(RBig::ZERO, RBig::from(2)));
        assert!(parse_constant("x").is_err());
    }
}

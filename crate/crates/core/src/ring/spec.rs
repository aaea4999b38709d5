//! Symbolic ring descriptions and element literals.
//!
//! Both types print in the same textual form the DSL parser accepts, so
//! `parse(spec.to_string()) == spec` holds for every well-formed value.

use std::fmt;

/// A symbolic description of a finite ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    /// Residues modulo `modulus`.
    Zm(u64),
    /// `n × n` matrices over `base`.
    Matrix(usize, Box<RingSpec>),
    /// Finite direct product, ordered lexicographically by component.
    Product(Vec<RingSpec>),
    /// The corner ring `eRe` with identity `e`.
    Corner(Box<RingSpec>, ElementLiteral),
    /// Quotient by the two-sided ideal generated by the listed elements.
    Quotient(Box<RingSpec>, Vec<ElementLiteral>),
    /// The center of `base`, realized as a ring.
    Center(Box<RingSpec>),
}

impl RingSpec {
    pub fn zm(modulus: u64) -> Self {
        RingSpec::Zm(modulus)
    }

    pub fn matrix(n: usize, base: RingSpec) -> Self {
        RingSpec::Matrix(n, Box::new(base))
    }

    pub fn product(components: Vec<RingSpec>) -> Self {
        RingSpec::Product(components)
    }

    pub fn corner(base: RingSpec, idempotent: ElementLiteral) -> Self {
        RingSpec::Corner(Box::new(base), idempotent)
    }

    pub fn quotient(base: RingSpec, generators: Vec<ElementLiteral>) -> Self {
        RingSpec::Quotient(Box::new(base), generators)
    }

    pub fn center(base: RingSpec) -> Self {
        RingSpec::Center(Box::new(base))
    }

    /// Structural validity independent of realization.
    pub fn validate(&self) -> Result<(), String> {
        match self {
            RingSpec::Zm(m) if *m < 2 => Err(format!("modulus must be at least 2, got {m}")),
            RingSpec::Zm(_) => Ok(()),
            RingSpec::Matrix(0, _) => Err("matrix dimension must be at least 1".into()),
            RingSpec::Matrix(_, base) => base.validate(),
            RingSpec::Product(parts) if parts.is_empty() => {
                Err("product needs at least one component".into())
            }
            RingSpec::Product(parts) => parts.iter().try_for_each(RingSpec::validate),
            RingSpec::Corner(base, _) | RingSpec::Center(base) => base.validate(),
            RingSpec::Quotient(base, gens) if gens.is_empty() => {
                let _ = base;
                Err("quotient needs at least one ideal generator".into())
            }
            RingSpec::Quotient(base, _) => base.validate(),
        }
    }

    /// True when the ring is (or contains) a finite direct product.
    pub fn has_product(&self) -> bool {
        match self {
            RingSpec::Zm(_) => false,
            RingSpec::Product(_) => true,
            RingSpec::Matrix(_, b)
            | RingSpec::Corner(b, _)
            | RingSpec::Quotient(b, _)
            | RingSpec::Center(b) => b.has_product(),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zm(m) => write!(f, "Z{m}"),
            RingSpec::Matrix(n, base) => write!(f, "M({n},{base})"),
            RingSpec::Product(parts) => {
                f.write_str("prod(")?;
                write_joined(f, parts, ",")?;
                f.write_str(")")
            }
            RingSpec::Corner(base, e) => write!(f, "corner({base},{e})"),
            RingSpec::Quotient(base, gens) => {
                write!(f, "quot({base},")?;
                write_joined(f, gens, ",")?;
                f.write_str(")")
            }
            RingSpec::Center(base) => write!(f, "center({base})"),
        }
    }
}

/// A ring element written out in the DSL's `elem` syntax.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ElementLiteral {
    /// An integer, read as `k · 1` in the target ring.
    Int(u64),
    /// Rows of a square matrix.
    Matrix(Vec<Vec<ElementLiteral>>),
    /// Components of a product element.
    Tuple(Vec<ElementLiteral>),
}

impl fmt::Display for ElementLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementLiteral::Int(k) => write!(f, "{k}"),
            ElementLiteral::Matrix(rows) => {
                f.write_str("[")?;
                for (i, row) in rows.iter().enumerate() {
                    if i > 0 {
                        f.write_str(";")?;
                    }
                    write_joined(f, row, ",")?;
                }
                f.write_str("]")
            }
            ElementLiteral::Tuple(parts) => {
                f.write_str("(")?;
                write_joined(f, parts, ",")?;
                f.write_str(")")
            }
        }
    }
}

fn write_joined<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T], sep: &str) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

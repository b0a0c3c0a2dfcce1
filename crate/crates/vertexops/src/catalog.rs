use crate::expr::{Atom, OperatorExpr};
use crate::rules::{CoeffRule, ExpFactor};
use crate::VertexError;

/// A named operator of the catalog.
pub trait OperatorSpec: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn atoms(&self) -> Vec<Atom>;

    fn build(&self) -> OperatorExpr {
        OperatorExpr::from_word(self.atoms())
    }
}

struct Named {
    name: &'static str,
    summary: &'static str,
    atoms: fn() -> Vec<Atom>,
}

impl OperatorSpec for Named {
    fn name(&self) -> &'static str {
        self.name
    }
    fn summary(&self) -> &'static str {
        self.summary
    }
    fn atoms(&self) -> Vec<Atom> {
        (self.atoms)()
    }
}

fn e(rule: CoeffRule) -> Atom {
    Atom::Exp(ExpFactor::new(rule))
}

fn x_atoms() -> Vec<Atom> {
    vec![
        e(CoeffRule::XCreate),
        e(CoeffRule::XAnnihilate),
        Atom::Lattice(2),
        Atom::ZPow(2),
    ]
}

fn y_atoms() -> Vec<Atom> {
    vec![
        e(CoeffRule::KoyamaCreate),
        e(CoeffRule::KoyamaAnnihilate),
        Atom::Lattice(1),
        Atom::ZPow(1),
    ]
}

fn x_hat_atoms() -> Vec<Atom> {
    let mut a = x_atoms();
    a.push(e(CoeffRule::KHat));
    a
}

fn y_hat_atoms() -> Vec<Atom> {
    vec![
        e(CoeffRule::HatCreate),
        e(CoeffRule::HatAnnihilate),
        Atom::Lattice(1),
        Atom::ZPow(1),
    ]
}

static REGISTRY: &[Named] = &[
    Named {
        name: "x",
        summary: "x(z) = E-(z) E+(z) e^α z^∂α",
        atoms: x_atoms,
    },
    Named {
        name: "Y",
        summary: "𝒴(z) = 𝓔-(z) 𝓔+(z) e^λ z^∂λ",
        atoms: y_atoms,
    },
    Named {
        name: "k_hat",
        summary: "k̂(z)",
        atoms: || vec![e(CoeffRule::KHat)],
    },
    Named {
        name: "x_hat",
        summary: "x̂(z) = x(z) k̂(z)",
        atoms: x_hat_atoms,
    },
    Named {
        name: "Y_hat",
        summary: "𝒴̂(z) = Ê-(z) Ê+(z) e^λ z^∂λ",
        atoms: y_hat_atoms,
    },
    Named {
        name: "E_minus_koyama",
        summary: "𝓔-(z)",
        atoms: || vec![e(CoeffRule::KoyamaCreate)],
    },
    Named {
        name: "E_plus_koyama",
        summary: "𝓔+(z)",
        atoms: || vec![e(CoeffRule::KoyamaAnnihilate)],
    },
    Named {
        name: "E_hat_minus",
        summary: "Ê-(z)",
        atoms: || vec![e(CoeffRule::HatCreate)],
    },
    Named {
        name: "E_hat_plus",
        summary: "Ê+(z)",
        atoms: || vec![e(CoeffRule::HatAnnihilate)],
    },
    Named {
        name: "E_hat_minus_lambda",
        summary: "Ê-(z) e^λ",
        atoms: || vec![e(CoeffRule::HatCreate), Atom::Lattice(1)],
    },
    Named {
        name: "E_hat_minus_lambda_inverse",
        summary: "e^-λ Ê-(z)^-1",
        atoms: || {
            vec![
                Atom::Lattice(-1),
                Atom::Exp(ExpFactor::new(CoeffRule::HatCreate).inverse()),
            ]
        },
    },
    Named {
        name: "E_plus_plus",
        summary: "E+(z), the annihilation half of x(z)",
        atoms: || vec![e(CoeffRule::XAnnihilate)],
    },
];

/// All catalog entries in a fixed order.
pub fn registry() -> impl Iterator<Item = &'static dyn OperatorSpec> {
    REGISTRY.iter().map(|n| n as &dyn OperatorSpec)
}

pub fn operator_names() -> Vec<&'static str> {
    registry().map(|s| s.name()).collect()
}

pub fn make_operator(name: &str) -> Result<OperatorExpr, VertexError> {
    registry()
        .find(|s| s.name() == name)
        .map(|s| s.build())
        .ok_or_else(|| VertexError::UnknownOperator(name.to_string()))
}

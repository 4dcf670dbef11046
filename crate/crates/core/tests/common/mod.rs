//! Shared generator for random well-arity terms and programs.

use numforge_core::dsl::{parse, Program};
use numforge_core::recfn::RecTerm;
use rand::rngs::StdRng;
use rand::Rng;

/// Generates a term of the requested arity with height at most `depth`.
/// `names` offers callable definitions as `(name, arity)` pairs.
pub fn gen_term(
    rng: &mut StdRng,
    arity: usize,
    depth: usize,
    allow_mu: bool,
    names: &[(String, usize)],
) -> RecTerm {
    let mut leaves: Vec<u8> = vec![0]; // Zero(arity)
    if arity >= 1 {
        leaves.push(1); // Proj
    }
    if arity == 1 {
        leaves.push(2); // Succ
    }
    let callable: Vec<&(String, usize)> = names.iter().filter(|(_, a)| *a == arity).collect();
    if !callable.is_empty() {
        leaves.push(3); // Name
    }

    let recursive_allowed = depth > 0;
    // Bias toward structure when depth remains.
    let make_leaf = !recursive_allowed || rng.gen_bool(0.35);
    if make_leaf {
        match leaves[rng.gen_range(0..leaves.len())] {
            0 => RecTerm::Zero(arity),
            1 => RecTerm::proj(rng.gen_range(1..=arity), arity),
            2 => RecTerm::Succ,
            _ => RecTerm::name(callable[rng.gen_range(0..callable.len())].0.clone()),
        }
    } else {
        let mut choices: Vec<u8> = vec![0]; // Compose
        if arity >= 1 {
            choices.push(1); // PrimRec
        }
        if allow_mu {
            choices.push(2); // Mu
        }
        match choices[rng.gen_range(0..choices.len())] {
            0 => {
                let k = rng.gen_range(1..=3);
                let outer = gen_term(rng, k, depth - 1, allow_mu, names);
                let inners = (0..k)
                    .map(|_| gen_term(rng, arity, depth - 1, allow_mu, names))
                    .collect();
                RecTerm::compose(outer, inners)
            }
            1 => {
                let base = gen_term(rng, arity - 1, depth - 1, allow_mu, names);
                let step = gen_term(rng, arity + 1, depth - 1, allow_mu, names);
                RecTerm::prim_rec(base, step)
            }
            _ => {
                let body = gen_term(rng, arity + 1, depth - 1, allow_mu, names);
                RecTerm::mu(body)
            }
        }
    }
}

/// Generates a whole program of `defs` definitions, each possibly calling
/// earlier ones, by rendering generated terms and reparsing them.
pub fn gen_program(rng: &mut StdRng, defs: usize, depth: usize) -> Program {
    let mut names: Vec<(String, usize)> = Vec::new();
    let mut source = String::new();
    for i in 0..defs {
        let arity = rng.gen_range(0..4);
        let term = gen_term(rng, arity, depth, true, &names);
        let name = format!("f{i}");
        let mut rendered = String::new();
        render(&term, &mut rendered);
        source.push_str(&format!("def {name} = {rendered};\n"));
        names.push((name, arity));
    }
    parse(&source).expect("generated programs are well-formed")
}

fn render(term: &RecTerm, out: &mut String) {
    match term {
        RecTerm::Zero(n) => out.push_str(&format!("Z[{n}]")),
        RecTerm::Succ => out.push('S'),
        RecTerm::Proj { index, arity } => out.push_str(&format!("P[{index},{arity}]")),
        RecTerm::Compose { outer, inners } => {
            out.push_str("C(");
            render(outer, out);
            out.push_str("; ");
            for (i, inner) in inners.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                render(inner, out);
            }
            out.push(')');
        }
        RecTerm::PrimRec { base, step } => {
            out.push_str("R(");
            render(base, out);
            out.push_str(", ");
            render(step, out);
            out.push(')');
        }
        RecTerm::Mu(body) => {
            out.push_str("M(");
            render(body, out);
            out.push(')');
        }
        RecTerm::Name(name) => out.push_str(name),
    }
}

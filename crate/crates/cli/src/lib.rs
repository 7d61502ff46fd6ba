//! Loaders, reports and subcommands behind the `demorgan` binary.

pub mod commands;
pub mod load;
pub mod report;

use demorgan_core::error::Error;
use demorgan_core::fincat::{has_amalgamation, Category, FinCategory};
use demorgan_core::indcomp::{
    embed_morphism, extract_base_failure, factor_through_base, ind_amalgamate, AmalgamationOutcome, IndObject,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

pub fn exit_code(e: &Error) -> i32 {
    if e.is_theorem_violation() {
        EXIT_VIOLATION
    } else {
        EXIT_INPUT
    }
}

/// Bounded ind-amalgamation against amalgamation in `c`. With amalgamation,
/// every embedded span must close at bound 1 and factor through `c`.
/// Without, the witness span must carry a base-failure certificate and stay
/// open up to `bound`.
pub fn amalgamation_consistency(c: &FinCategory, bound: usize) -> Result<bool, Error> {
    let embed = |f: usize, g: usize| {
        (
            IndObject::embed(c, c.dom(f)),
            IndObject::embed(c, c.cod(f)),
            IndObject::embed(c, c.cod(g)),
        )
    };
    match has_amalgamation(c) {
        Ok(()) => {
            for f in 0..c.morphism_count() {
                for g in 0..c.morphism_count() {
                    if c.dom(f) != c.dom(g) {
                        continue;
                    }
                    let (a, b, cc) = embed(f, g);
                    match ind_amalgamate(c, &a, (&b, &embed_morphism(f)), (&cc, &embed_morphism(g)), 1)? {
                        AmalgamationOutcome::Found(am) => {
                            factor_through_base(c, f, g, &am)?;
                        }
                        AmalgamationOutcome::NoneWithinBound { .. } => return Ok(false),
                    }
                    if extract_base_failure(c, f, g).is_some() {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        Err((f, g)) => {
            if extract_base_failure(c, f, g).is_none() {
                return Ok(false);
            }
            let (a, b, cc) = embed(f, g);
            let out = ind_amalgamate(c, &a, (&b, &embed_morphism(f)), (&cc, &embed_morphism(g)), bound)?;
            Ok(out.found().is_none())
        }
    }
}

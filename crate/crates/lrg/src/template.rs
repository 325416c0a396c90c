//! Triangle-free templates: the colour class that compounding eliminates.
//!
//! A colour of a linear colouring is a usable template when its length set
//! contains the longest edge-length `m-1` and is sum-free (no `a <= b` in the
//! set with `a + b` also in the set, the `a = b` doubling case included —
//! vertices `0, a, 2a` would otherwise form a monochromatic triangle).
//! Sum-freeness is exactly triangle-freeness under the difference-set
//! characterisation.

use crate::colouring::{ColourId, Length, LengthSet, LinearColouring};
use crate::{Error, Result};

/// A validated template: colour, its length set `theta`, and the tail length
/// `phi = min(theta) - 1` appended after the last full block of a compound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TfTemplate {
    colour: ColourId,
    theta: LengthSet,
    phi: u32,
}

impl TfTemplate {
    pub fn colour(&self) -> ColourId {
        self.colour
    }

    pub fn theta(&self) -> &LengthSet {
        &self.theta
    }

    pub fn phi(&self) -> u32 {
        self.phi
    }
}

/// Tail length of a non-empty length set: `min - 1`.
pub fn compute_phi(theta: &LengthSet) -> Result<u32> {
    theta.min().map(|l| l - 1).ok_or(Error::EmptyTemplate)
}

/// Checks the template conditions for one colour of a colouring: the class
/// must contain `m-1` and be sum-free. The surrounding colouring's other
/// clique bounds are a separate concern ([`clique::verify`]).
pub fn validate_template(col: &LinearColouring, colour: ColourId) -> Result<TfTemplate> {
    let theta = col.length_set(colour)?;
    let longest = col.order() - 1;
    if !theta.contains(longest) {
        return Err(Error::TemplateMissingLongest { colour, longest });
    }
    if let Some((a, b)) = find_sum_violation(&theta) {
        return Err(Error::TemplateTriangle {
            colour,
            a,
            b,
            sum: a + b,
        });
    }
    let phi = compute_phi(&theta)?;
    Ok(TfTemplate { colour, theta, phi })
}

/// First pair `a <= b` in the set with `a + b` in the set, in increasing
/// order, if any.
fn find_sum_violation(theta: &LengthSet) -> Option<(Length, Length)> {
    let lengths = theta.lengths();
    for (i, &a) in lengths.iter().enumerate() {
        for &b in &lengths[i..] {
            if a + b > theta.order() - 1 {
                break;
            }
            if theta.contains(a + b) {
                return Some((a, b));
            }
        }
    }
    None
}

/// All colours of the colouring whose classes satisfy the template conditions.
pub fn find_tf_templates(col: &LinearColouring) -> Vec<TfTemplate> {
    (1..=col.colour_count())
        .filter_map(|s| validate_template(col, s).ok())
        .collect()
}

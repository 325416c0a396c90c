//! Compounding two prototype colourings into a larger linear Ramsey graph.
//!
//! Given a first prototype `U` of order `m` whose last colour `q` is a
//! triangle-free template, and a second prototype `V` of order `n`, the
//! compound `W` has order `(m-1)(n-1) + 1 + phi`. Its lengths fall into
//! `n-1` blocks of width `m-1` plus a tail of `phi` lengths: within block
//! `mu`, a length with residue in the template takes the colour of `mu` in
//! `V`, every other residue keeps its `U` colour, and the tail repeats the
//! first `phi` residues of `U`. The template colour itself never survives.
//!
//! Retained `U`-colours keep ids `1..q-1`; `V`-colour `s` becomes `(q-1)+s`.
//!
//! Verification of `W` only needs a bounded search in the retained colours:
//! any clique there can be slid down, block by block, until its largest
//! length is at most `(k_s - 1)(m - 2)`. Clique numbers in the `V`-mapped
//! colours equal those of `V` itself, so they are reported from the
//! prototype without searching `W`.

use crate::clique::{
    clique_number, clique_number_capped, has_kclique, BoundsVector, ColourVerdict, Method,
    VerificationReport,
};
use crate::colouring::{ColourId, Length, LinearColouring};
use crate::template::{validate_template, TfTemplate};
use crate::{Error, Result};

/// Inputs of a compound: prototypes, their bounds, and the chosen template.
///
/// Construction validates the template conditions and the shape of the
/// bounds, but trusts that the prototypes were verified against their bounds
/// beforehand; provenance records carry content hashes so that trust can be
/// audited.
#[derive(Clone, Debug)]
pub struct CompoundRecipe {
    u: LinearColouring,
    u_bounds: BoundsVector,
    template: TfTemplate,
    v: LinearColouring,
    v_bounds: BoundsVector,
}

impl CompoundRecipe {
    pub fn new(
        u: LinearColouring,
        u_bounds: BoundsVector,
        template_colour: ColourId,
        v: LinearColouring,
        v_bounds: BoundsVector,
    ) -> Result<Self> {
        let q = u.colour_count();
        if q < 2 {
            return Err(Error::InvalidRecipe(
                "first prototype must have at least one colour besides the template".into(),
            ));
        }
        if template_colour != q {
            return Err(Error::InvalidRecipe(format!(
                "template must be the last colour ({q}); permute colours first"
            )));
        }
        if u_bounds.len() != q as usize {
            return Err(Error::BoundsArity {
                expected: q as usize,
                got: u_bounds.len(),
            });
        }
        if u_bounds.bound(q) != 3 {
            return Err(Error::InvalidRecipe(format!(
                "template colour must carry bound 3, got {}",
                u_bounds.bound(q)
            )));
        }
        if v_bounds.len() != v.colour_count() as usize {
            return Err(Error::BoundsArity {
                expected: v.colour_count() as usize,
                got: v_bounds.len(),
            });
        }
        let template = validate_template(&u, template_colour)?;
        Ok(CompoundRecipe {
            u,
            u_bounds,
            template,
            v,
            v_bounds,
        })
    }

    pub fn u(&self) -> &LinearColouring {
        &self.u
    }

    pub fn v(&self) -> &LinearColouring {
        &self.v
    }

    pub fn u_bounds(&self) -> &BoundsVector {
        &self.u_bounds
    }

    pub fn v_bounds(&self) -> &BoundsVector {
        &self.v_bounds
    }

    pub fn template(&self) -> &TfTemplate {
        &self.template
    }

    /// Bounds of the compound: retained `U` bounds followed by `V` bounds.
    pub fn w_bounds(&self) -> BoundsVector {
        let retained: Vec<u32> = self.u_bounds.as_slice()[..(self.u.colour_count() - 1) as usize]
            .to_vec();
        BoundsVector::new(retained)
            .expect("retained bounds are non-empty and valid")
            .concat(&self.v_bounds)
    }

    /// `Q`: the largest `k_s - 1` over the retained colours. `Q * (m - 2)`
    /// caps the lengths any retained-colour search has to visit.
    pub fn q_cap(&self) -> u32 {
        self.u_bounds.as_slice()[..(self.u.colour_count() - 1) as usize]
            .iter()
            .map(|&k| k - 1)
            .max()
            .expect("at least one retained colour")
    }

    /// Full verification of both prototypes against their bounds.
    pub fn verify_prototypes(&self) -> Result<(VerificationReport, VerificationReport)> {
        let ru = crate::clique::verify(&self.u, &self.u_bounds)?;
        let rv = crate::clique::verify(&self.v, &self.v_bounds)?;
        Ok((ru, rv))
    }
}

/// A built compound and the recipe it came from.
#[derive(Clone, Debug)]
pub struct CompoundResult {
    w: LinearColouring,
    recipe: CompoundRecipe,
}

impl CompoundResult {
    pub fn w(&self) -> &LinearColouring {
        &self.w
    }

    pub fn recipe(&self) -> &CompoundRecipe {
        &self.recipe
    }

    /// Provenance side-record naming the inputs (labels chosen by the caller,
    /// typically file paths) plus the construction parameters.
    pub fn provenance(&self, input_u: &str, input_v: &str, method: Method) -> Provenance {
        Provenance {
            input_u: input_u.to_string(),
            input_u_sha256: self.recipe.u.content_hash(),
            input_v: input_v.to_string(),
            input_v_sha256: self.recipe.v.content_hash(),
            template_colour: self.recipe.template.colour(),
            theta: self.recipe.template.theta().lengths().to_vec(),
            phi: self.recipe.template.phi(),
            q_cap: self.recipe.q_cap(),
            method,
            order: self.w.order() as u64,
        }
    }
}

/// Order of a compound before building it: `(m-1)(n-1) + 1 + phi`.
pub fn predicted_order(m: u32, n: u32, phi: u32) -> Result<u64> {
    if m < 2 || n < 2 {
        return Err(Error::ArgumentRange(format!(
            "prototype orders must be at least 2, got m={m} n={n}"
        )));
    }
    if phi >= m - 1 {
        return Err(Error::ArgumentRange(format!(
            "tail length {phi} must be below m-1 = {}",
            m - 1
        )));
    }
    Ok((m as u64 - 1) * (n as u64 - 1) + 1 + phi as u64)
}

/// Builds the compound colouring. Every length of the result is assigned
/// exactly once; the template colour is eliminated.
pub fn build(recipe: &CompoundRecipe) -> Result<CompoundResult> {
    let u = &recipe.u;
    let v = &recipe.v;
    let q = u.colour_count();
    let r = v.colour_count();
    let m = u.order();
    let n = v.order();

    // the recipe constructor establishes these; re-check cheaply since the
    // build's guarantees depend on them
    let template = validate_template(u, q)?;
    if template != recipe.template {
        return Err(Error::InvalidRecipe(
            "template in recipe does not match the first prototype".into(),
        ));
    }
    let phi = template.phi();
    let w_colours = (q - 1)
        .checked_add(r)
        .ok_or_else(|| Error::InvalidRecipe("colour count overflow".into()))?;

    let order = predicted_order(m, n, phi)?;
    let order = u32::try_from(order)
        .map_err(|_| Error::ArgumentRange(format!("compound order {order} exceeds u32")))?;

    let block = m - 1;
    let full_blocks = (n - 1) as u64 * block as u64;
    let mut colours: Vec<ColourId> = Vec::with_capacity((order - 1) as usize);
    for length in 1..order {
        let c = if (length as u64) <= full_blocks {
            let mu = (length - 1) / block + 1;
            let residue = (length - 1) % block + 1;
            if template.theta().contains(residue) {
                (q - 1) + v.colour_of(mu)
            } else {
                u.colour_of(residue)
            }
        } else {
            let j = length - (n - 1) * block;
            u.colour_of(j)
        };
        colours.push(c);
    }

    let w = LinearColouring::new(order, w_colours, colours)?;
    Ok(CompoundResult {
        w,
        recipe: recipe.clone(),
    })
}

/// Restricted verification of a compound against bounds for `W` (retained
/// `U` bounds followed by `V` bounds).
///
/// Retained colours are searched only up to length `(k_s - 1)(m - 2)`; the
/// clique number of the subgraph induced by those lengths equals the clique
/// number of all of `W` whenever `W` meets its bounds. `V`-mapped colours
/// inherit the clique numbers of `V`, reported here from a search of `V`
/// itself; a failing inherited colour carries a witness lifted into `W`
/// lengths (each `V` length scaled by `m-1`).
pub fn restricted_verify(
    result: &CompoundResult,
    bounds: &BoundsVector,
) -> Result<VerificationReport> {
    let recipe = &result.recipe;
    let q = recipe.u.colour_count();
    let r = recipe.v.colour_count();
    let m = recipe.u.order();
    let expected = (q - 1 + r) as usize;
    if bounds.len() != expected {
        return Err(Error::BoundsArity {
            expected,
            got: bounds.len(),
        });
    }

    let w = &result.w;
    let max_length = w.order() - 1;
    let mut verdicts = Vec::with_capacity(expected);

    for s in 1..q {
        let k = bounds.bound(s);
        let cap_wide = (k as u64 - 1) * (m as u64 - 2);
        let cap = cap_wide.min(max_length as u64) as Length;
        let set = w.length_set(s)?;
        let (clique, _) = clique_number_capped(&set, Some(cap));
        let ok = clique < k;
        let witness = if ok {
            None
        } else {
            has_kclique(&set, k, Some(cap))
        };
        verdicts.push(ColourVerdict {
            colour: s,
            clique,
            bound: k,
            ok,
            witness,
        });
    }

    for t in 1..=r {
        let mapped = q - 1 + t;
        let k = bounds.bound(mapped);
        let vset = recipe.v.length_set(t)?;
        let (clique, _) = clique_number(&vset);
        let ok = clique < k;
        let witness = if ok {
            None
        } else {
            has_kclique(&vset, k, None).map(|vw| crate::clique::CliqueWitness {
                colour: mapped,
                diffs: vw.diffs.iter().map(|&mu| mu * (m - 1)).collect(),
            })
        };
        verdicts.push(ColourVerdict {
            colour: mapped,
            clique,
            bound: k,
            ok,
            witness,
        });
    }

    let pass = verdicts.iter().all(|v| v.ok);
    Ok(VerificationReport {
        verdicts,
        pass,
        method: Method::Restricted,
    })
}

/// Whether the built compound is guaranteed cyclic: the first `phi` lengths
/// of `U` form a cyclic pattern, the remaining lengths of `U` are arranged
/// symmetrically under reflection, and `V` is cyclic.
pub fn predicts_cyclic(recipe: &CompoundRecipe) -> bool {
    let u = &recipe.u;
    let m = u.order();
    let phi = recipe.template.phi();
    let head = (1..=phi).all(|l| u.colour_of(l) == u.colour_of(phi + 1 - l));
    let tail = ((phi + 1)..m).all(|l| u.colour_of(l) == u.colour_of(m + phi - l));
    head && tail && recipe.v.is_cyclic()
}

/// The even-order special case: `U` of order `2p` with template exactly
/// `{p, ..., 2p-1}`. Identical to [`build`] with that template; the tail
/// length is forced to `p - 1`.
pub fn doubling_special_case(
    u: LinearColouring,
    u_bounds: BoundsVector,
    v: LinearColouring,
    v_bounds: BoundsVector,
) -> Result<CompoundResult> {
    let m = u.order();
    if m % 2 != 0 {
        return Err(Error::InvalidRecipe(format!(
            "doubling requires an even first-prototype order, got {m}"
        )));
    }
    let p = m / 2;
    let q = u.colour_count();
    let expected: Vec<Length> = (p..m).collect();
    let actual = u.length_set(q)?;
    if actual.lengths() != expected.as_slice() {
        return Err(Error::InvalidRecipe(format!(
            "doubling requires the template to be exactly {{{p}, ..., {}}}",
            m - 1
        )));
    }
    let recipe = CompoundRecipe::new(u, u_bounds, q, v, v_bounds)?;
    debug_assert_eq!(recipe.template.phi(), p - 1);
    build(&recipe)
}

/// Provenance side-record for a compound colouring file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub input_u: String,
    pub input_u_sha256: String,
    pub input_v: String,
    pub input_v_sha256: String,
    pub template_colour: ColourId,
    pub theta: Vec<Length>,
    pub phi: u32,
    pub q_cap: u32,
    pub method: Method,
    pub order: u64,
}

impl Provenance {
    pub fn render(&self) -> String {
        let theta: Vec<String> = self.theta.iter().map(|l| l.to_string()).collect();
        format!(
            "# lrg-provenance 1\n\
             input-u {}\n\
             input-u-sha256 {}\n\
             input-v {}\n\
             input-v-sha256 {}\n\
             template-colour {}\n\
             theta {}\n\
             phi {}\n\
             q {}\n\
             method {}\n\
             order {}\n",
            self.input_u,
            self.input_u_sha256,
            self.input_v,
            self.input_v_sha256,
            self.template_colour,
            theta.join(" "),
            self.phi,
            self.q_cap,
            self.method,
            self.order
        )
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let magic = lines
            .next()
            .ok_or_else(|| Error::InvalidProvenance("empty record".into()))?;
        if magic.split_whitespace().collect::<Vec<_>>() != ["#", "lrg-provenance", "1"] {
            return Err(Error::InvalidProvenance(format!(
                "expected `# lrg-provenance 1`, got `{magic}`"
            )));
        }
        let mut fields = std::collections::HashMap::new();
        for line in lines {
            if line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| Error::InvalidProvenance(format!("bad line `{line}`")))?;
            fields.insert(key.to_string(), value.trim().to_string());
        }
        let get = |k: &str| -> Result<String> {
            fields
                .get(k)
                .cloned()
                .ok_or_else(|| Error::InvalidProvenance(format!("missing key `{k}`")))
        };
        let parse_u32 = |k: &str| -> Result<u32> {
            get(k)?
                .parse()
                .map_err(|_| Error::InvalidProvenance(format!("bad integer for `{k}`")))
        };
        let theta = get("theta")?
            .split_whitespace()
            .map(|t| {
                t.parse::<Length>()
                    .map_err(|_| Error::InvalidProvenance(format!("bad theta entry `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Provenance {
            input_u: get("input-u")?,
            input_u_sha256: get("input-u-sha256")?,
            input_v: get("input-v")?,
            input_v_sha256: get("input-v-sha256")?,
            template_colour: parse_u32("template-colour")?,
            theta,
            phi: parse_u32("phi")?,
            q_cap: parse_u32("q")?,
            method: get("method")?.parse()?,
            order: get("order")?
                .parse()
                .map_err(|_| Error::InvalidProvenance("bad integer for `order`".into()))?,
        })
    }
}

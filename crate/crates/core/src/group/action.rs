use super::{ElemId, FiniteGroup};
use crate::error::{Error, Result};
use std::collections::VecDeque;

/// Exhaustive verification budget, in (acting element, kernel element) pairs.
const EXHAUSTIVE_CHECK_LIMIT: usize = 1_000_000;

/// An action of an acting group on a kernel group by automorphisms, stored
/// as a dense table indexed by `(acting id, kernel id)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Action {
    kernel_order: usize,
    acting_order: usize,
    table: Vec<ElemId>,
}

impl Action {
    pub fn apply(&self, acting: ElemId, h: ElemId) -> ElemId {
        self.table[acting as usize * self.kernel_order + h as usize]
    }

    pub fn kernel_order(&self) -> usize {
        self.kernel_order
    }

    pub fn acting_order(&self) -> usize {
        self.acting_order
    }

    pub fn trivial(kernel: &FiniteGroup, acting: &FiniteGroup) -> Action {
        let k = kernel.order();
        let table = (0..acting.order()).flat_map(|_| 0..k as ElemId).collect();
        Action { kernel_order: k, acting_order: acting.order(), table }
    }

    /// Tabulates `f` over all pairs and verifies the action contract.
    pub fn from_fn(
        kernel: &FiniteGroup,
        acting: &FiniteGroup,
        f: impl Fn(ElemId, ElemId) -> ElemId,
    ) -> Result<Action> {
        let k = kernel.order();
        let mut table = Vec::with_capacity(k * acting.order());
        for g in 0..acting.order() as ElemId {
            for h in 0..k as ElemId {
                let img = f(g, h);
                if img as usize >= k {
                    return Err(Error::InvalidAction(format!("image {img} out of range")));
                }
                table.push(img);
            }
        }
        let action = Action { kernel_order: k, acting_order: acting.order(), table };
        action.verify(kernel, acting)?;
        Ok(action)
    }

    /// Extends the images of the acting group's generators to the whole
    /// acting group using `apply(g·s, h) = apply(g, apply(s, h))`.
    ///
    /// `images[i][h]` is the image of kernel element `h` under generator `i`.
    pub fn from_generator_images(
        kernel: &FiniteGroup,
        acting: &FiniteGroup,
        images: &[Vec<ElemId>],
    ) -> Result<Action> {
        let k = kernel.order();
        let gens = acting.generators();
        if images.len() != gens.len() {
            return Err(Error::InvalidAction(format!(
                "{} generator images for {} generators",
                images.len(),
                gens.len()
            )));
        }
        if images.iter().any(|img| img.len() != k || img.iter().any(|&x| x as usize >= k)) {
            return Err(Error::InvalidAction("generator image has wrong shape".into()));
        }
        let n = acting.order();
        let mut table = vec![ElemId::MAX; n * k];
        table[..k].iter_mut().enumerate().for_each(|(h, t)| *t = h as ElemId);
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0 as ElemId]);
        while let Some(g) = queue.pop_front() {
            for (s, img) in gens.iter().zip(images) {
                let gs = acting.compose(g, *s) as usize;
                let row: Vec<ElemId> = (0..k)
                    .map(|h| table[g as usize * k + img[h] as usize])
                    .collect();
                if seen[gs] {
                    if table[gs * k..(gs + 1) * k] != row[..] {
                        return Err(Error::InvalidAction(
                            "generator images are not compatible with the acting group".into(),
                        ));
                    }
                } else {
                    seen[gs] = true;
                    table[gs * k..(gs + 1) * k].copy_from_slice(&row);
                    queue.push_back(gs as ElemId);
                }
            }
        }
        let action = Action { kernel_order: k, acting_order: n, table };
        action.verify(kernel, acting)?;
        Ok(action)
    }

    /// Checks that each row is an automorphism and that the rows compose as
    /// a homomorphism. Exhaustive under the pair budget, generators otherwise.
    pub fn verify(&self, kernel: &FiniteGroup, acting: &FiniteGroup) -> Result<()> {
        let k = kernel.order();
        let n = acting.order();
        if self.kernel_order != k || self.acting_order != n {
            return Err(Error::InvalidAction("table shape does not match groups".into()));
        }
        let exhaustive = n.saturating_mul(k) <= EXHAUSTIVE_CHECK_LIMIT;
        let all_acting: Vec<ElemId> = (0..n as ElemId).collect();
        let all_kernel: Vec<ElemId> = (0..k as ElemId).collect();
        let acting_rows: &[ElemId] = if exhaustive { &all_acting } else { acting.generators() };
        let kernel_left: &[ElemId] = if exhaustive { &all_kernel } else { kernel.generators() };

        if (0..k).any(|h| self.table[h] != h as ElemId) {
            return Err(Error::InvalidAction("identity does not act trivially".into()));
        }
        for &g in acting_rows {
            let row = &self.table[g as usize * k..(g as usize + 1) * k];
            let mut hit = vec![false; k];
            for &img in row {
                if std::mem::replace(&mut hit[img as usize], true) {
                    return Err(Error::InvalidAction(format!("acting element {g} is not bijective")));
                }
            }
            for &x in kernel_left {
                for &s in kernel.generators() {
                    let lhs = row[kernel.compose(x, s) as usize];
                    let rhs = kernel.compose(row[x as usize], row[s as usize]);
                    if lhs != rhs {
                        return Err(Error::InvalidAction(format!(
                            "acting element {g} is not a homomorphism"
                        )));
                    }
                }
            }
        }
        for &g in acting_rows {
            for &s in acting.generators() {
                let gs = acting.compose(g, s);
                for &h in kernel_left {
                    if self.apply(gs, h) != self.apply(g, self.apply(s, h)) {
                        return Err(Error::InvalidAction(
                            "action is not compatible with acting-group composition".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

//! Preference-layered matroids and the D-side choice set.
//!
//! Both layered constructions peel the most-preferred class of the remaining
//! elements, take the current contracted matroid restricted to that class as
//! the next layer, then contract the class away. The layered matroid is the
//! direct sum of the layers. On the H side every head class is split into its
//! `E1` part followed by its `E2` part.

use crate::element::ElementSet;
use crate::instance::Instance;
use crate::matroid::MatroidView;
use crate::preference::Side;

#[derive(Debug, Clone)]
pub struct Layer {
    pub tier_set: ElementSet,
    pub minor: MatroidView,
}

/// The layer sequence `(T_1, M_1), ..., (T_k, M_k)` and its direct sum.
#[derive(Debug, Clone)]
pub struct LayeredMatroid {
    pub side: Side,
    pub layers: Vec<Layer>,
    pub whole: MatroidView,
}

impl LayeredMatroid {
    pub fn ground(&self) -> &ElementSet {
        self.whole.ground()
    }

    /// `T_1 ∪ ... ∪ T_s` for `s = 1..=k`.
    pub fn prefixes(&self) -> Vec<ElementSet> {
        let mut acc = ElementSet::new();
        self.layers
            .iter()
            .map(|l| {
                acc.union_with(&l.tier_set);
                acc.clone()
            })
            .collect()
    }

    /// Greedy base of the whole layered matroid.
    pub fn greedy_base(&self) -> ElementSet {
        self.whole.greedy_base_of(self.whole.ground())
    }
}

fn assemble(side: Side, ambient: &MatroidView, classes: Vec<ElementSet>) -> LayeredMatroid {
    let mut current = ambient.clone();
    let mut layers = Vec::with_capacity(classes.len());
    for tier_set in classes {
        let minor = current.restrict_to(&tier_set);
        current = current
            .contract(&tier_set)
            .expect("peeled class lies in the current ground set");
        layers.push(Layer { tier_set, minor });
    }
    let whole = MatroidView::direct_sum(layers.iter().map(|l| l.minor.clone()).collect())
        .expect("layers are disjoint");
    LayeredMatroid {
        side,
        layers,
        whole,
    }
}

/// `M_D⟨F⟩`: layers are the successive head classes of `F` under `≿_D`.
pub fn build_layered_d(instance: &Instance, f: &ElementSet) -> LayeredMatroid {
    let pref = instance.pref(Side::D);
    let mut rest = f.clone();
    let mut classes = Vec::new();
    while !rest.is_empty() {
        let head = pref.heads(&rest);
        rest = rest.difference(&head);
        classes.push(head);
    }
    assemble(Side::D, instance.matroid(Side::D), classes)
}

/// `M_H⟨F⟩`: each head class under `≿_H` becomes up to two layers, its `E1`
/// part first and its `E2` part second. Empty parts are skipped.
pub fn build_layered_h(instance: &Instance, f: &ElementSet) -> LayeredMatroid {
    let pref = instance.pref(Side::H);
    let mut rest = f.clone();
    let mut classes = Vec::new();
    while !rest.is_empty() {
        let head = pref.heads(&rest);
        rest = rest.difference(&head);
        for part in [head.intersection(instance.e1()), head.intersection(instance.e2())] {
            if !part.is_empty() {
                classes.push(part);
            }
        }
    }
    assemble(Side::H, instance.matroid(Side::H), classes)
}

/// `Ch_D(F)`: peel head classes under `≿_D`, contracting each one, and keep
/// the elements that are not loops of the contracted matroid at the moment
/// their class is peeled.
pub fn choice_d(instance: &Instance, f: &ElementSet) -> ElementSet {
    let pref = instance.pref(Side::D);
    let mut current = instance.matroid(Side::D).clone();
    let mut rest = f.clone();
    let mut chosen = ElementSet::new();
    while !rest.is_empty() {
        let head = pref.heads(&rest);
        rest = rest.difference(&head);
        chosen.extend(
            head.iter()
                .filter(|&e| current.independent(&ElementSet::singleton(e))),
        );
        current = current
            .contract(&head)
            .expect("peeled class lies in the current ground set");
    }
    chosen
}

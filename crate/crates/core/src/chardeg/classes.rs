use std::collections::VecDeque;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::Result;
use crate::group::{Element, ElementList, FiniteGroup};

/// Conjugacy classes of an enumerated group.
///
/// Classes are numbered by their least element, so class 0 is the identity.
#[derive(Debug, Clone)]
pub struct ClassData {
    pub reps: Vec<Element>,
    pub sizes: Vec<u64>,
    /// Class index of each element, by position in the sorted element list.
    pub class_index: Vec<usize>,
    pub inverse_class: Vec<usize>,
    /// Member positions of each class, ascending.
    pub members: Vec<Vec<usize>>,
    pub elements: Arc<ElementList>,
}

impl ClassData {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn class_of(&self, e: &Element) -> Option<usize> {
        self.elements.position(e).map(|i| self.class_index[i])
    }

    pub fn group_order(&self) -> u64 {
        self.elements.len() as u64
    }
}

/// Orbits of the conjugation action, computed with the generators only.
pub fn conjugacy_classes(g: &FiniteGroup, cap: u64) -> Result<ClassData> {
    let elements = g.elements(cap)?;
    let gens = g.generators();
    let gen_invs: Vec<Element> = gens.iter().map(|x| g.inverse(x)).collect();
    let n = elements.len();
    let mut class_index = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if class_index[start] != usize::MAX {
            continue;
        }
        let c = members.len();
        class_index[start] = c;
        let mut orbit = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let ex = &elements.elements[x];
            for (s, si) in gens.iter().zip(&gen_invs) {
                let y = g.multiply(&g.multiply(si, ex), s);
                let yi = elements.position(&y).expect("conjugate lies in the group");
                if class_index[yi] == usize::MAX {
                    class_index[yi] = c;
                    orbit.push(yi);
                    queue.push_back(yi);
                }
            }
        }
        orbit.sort_unstable();
        members.push(orbit);
    }
    let reps: Vec<Element> = members.iter().map(|m| elements.elements[m[0]].clone()).collect();
    let sizes = members.iter().map(|m| m.len() as u64).collect();
    let inverse_class = reps
        .iter()
        .map(|r| class_index[elements.position(&g.inverse(r)).expect("inverse lies in the group")])
        .collect();
    Ok(ClassData {
        reps,
        sizes,
        class_index,
        inverse_class,
        members,
        elements,
    })
}

/// Class multiplication coefficients for a fixed first class `i`:
/// `a[j][k]` counts pairs `(x, y)` in `C_i x C_j` with `x y = z_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassMatrix {
    pub i: usize,
    pub a: Vec<Vec<u64>>,
}

pub fn class_matrix(g: &FiniteGroup, cd: &ClassData, i: usize) -> ClassMatrix {
    let r = cd.len();
    let mut a = vec![vec![0u64; r]; r];
    for &x in &cd.members[i] {
        let x_inv = g.inverse(&cd.elements.elements[x]);
        for (k, z) in cd.reps.iter().enumerate() {
            let y = g.multiply(&x_inv, z);
            let j = cd.class_index[cd.elements.position(&y).expect("product lies in the group")];
            a[j][k] += 1;
        }
    }
    ClassMatrix { i, a }
}

pub fn all_class_matrices(g: &FiniteGroup, cd: &ClassData) -> Vec<ClassMatrix> {
    (0..cd.len())
        .into_par_iter()
        .map(|i| class_matrix(g, cd, i))
        .collect()
}

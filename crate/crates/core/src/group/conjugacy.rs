//! Conjugacy classes.

use super::FiniteGroup;

/// Partition of the elements into conjugacy classes, sorted by
/// (size, smallest element); class 0 is {identity}. Elements within a class
/// are ascending.
#[derive(Clone, Debug)]
pub struct ConjugacyPartition {
    pub classes: Vec<Vec<u32>>,
    pub class_of: Vec<u32>,
    pub sizes: Vec<usize>,
}

impl ConjugacyPartition {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Smallest element of each class.
    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0] as usize).collect()
    }
}

pub fn conjugacy_classes(group: &FiniteGroup) -> ConjugacyPartition {
    let n = group.n();
    let mut assigned = vec![false; n];
    let mut classes: Vec<Vec<u32>> = Vec::new();
    for x in 0..n {
        if assigned[x] {
            continue;
        }
        let mut members = Vec::new();
        for g in 0..n {
            let y = group.conj(g, x);
            if !assigned[y] {
                assigned[y] = true;
                members.push(y as u32);
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    classes.sort_by(|a, b| a.len().cmp(&b.len()).then(a[0].cmp(&b[0])));
    let mut class_of = vec![0u32; n];
    for (i, class) in classes.iter().enumerate() {
        for &x in class {
            class_of[x as usize] = i as u32;
        }
    }
    let sizes = classes.iter().map(|c| c.len()).collect();
    ConjugacyPartition {
        classes,
        class_of,
        sizes,
    }
}

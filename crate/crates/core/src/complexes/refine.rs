use crate::error::Result;
use crate::exactlin::{AffineFunctional, Polyhedron};

/// Hyperplanes bounding or containing `p`.
fn hyperplanes(p: &Polyhedron) -> Vec<AffineFunctional> {
    p.facet_inequalities().iter().chain(p.equations()).cloned().collect()
}

/// Pieces of `a` cut out by the hyperplanes of `b`, when `a ∩ b` is not a face of `a`.
fn split_against(a: &Polyhedron, b: &Polyhedron) -> Result<Option<Vec<Polyhedron>>> {
    let inter = match a.intersect(b)? {
        Some(i) => i,
        None => return Ok(None),
    };
    if inter.is_face_of(a) {
        return Ok(None);
    }
    let mut open = vec![a.clone()];
    let mut settled = Vec::new();
    for h in hyperplanes(b) {
        let mut next = Vec::new();
        for p in open {
            match p.split(&h) {
                Some((x, y)) => {
                    for q in [x, y] {
                        match q.intersect(b)? {
                            Some(i) if !i.is_face_of(&q) => next.push(q),
                            _ => settled.push(q),
                        }
                    }
                }
                None => next.push(p),
            }
        }
        open = next;
    }
    settled.extend(open);
    Ok(if settled.len() > 1 { Some(settled) } else { None })
}

/// Subdivides the given polyhedra until any two intersect in a common face.
///
/// Every input is the union of the output cells of its own dimension that it contains.
pub fn refine_cells(cells: &[Polyhedron]) -> Result<Vec<Polyhedron>> {
    let mut queue: Vec<Polyhedron> = cells.to_vec();
    queue.sort();
    queue.dedup();
    queue.reverse();
    let mut done: Vec<Polyhedron> = Vec::new();
    'next: while let Some(c) = queue.pop() {
        if done.contains(&c) {
            continue;
        }
        for i in 0..done.len() {
            if let Some(pieces) = split_against(&c, &done[i])? {
                queue.extend(pieces);
                continue 'next;
            }
            if let Some(pieces) = split_against(&done[i], &c)? {
                done.swap_remove(i);
                queue.extend(pieces);
                queue.push(c);
                continue 'next;
            }
        }
        done.push(c);
    }
    done.sort();
    Ok(done)
}

/// Face closure of a set of polyhedra, sorted by dimension and then canonically.
pub fn face_closure(cells: &[Polyhedron]) -> Vec<Polyhedron> {
    let mut all: Vec<Polyhedron> = cells.iter().flat_map(|c| c.all_faces()).collect();
    all.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
    all.dedup();
    all
}

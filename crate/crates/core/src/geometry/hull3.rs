//! Spatial convex hull: quickhull with conflict lists, visibility decided by
//! exact `orient3d`, followed by merging of coplanar triangles into facets.

use std::collections::HashMap;

use robust::{orient3d, Coord3D};

use super::hull2::{convex_hull_2d, Hull2};
use super::vector::{cross, dot, norm, normalize, orthonormal_complement, sub, Vec3};

/// Adjacent triangles whose unit normals differ by less than this are one facet.
pub const COPLANAR_NORMAL_TOL: f64 = 1e-10;

/// Triangles with `|cross| ≤ SLIVER_TOL · longest_edge²` count as slivers.
const SLIVER_TOL: f64 = 1e-9;

/// Relative thickness below which a point set is considered lower-dimensional.
const FLATNESS_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct RawFacet {
    pub normal: Vec3,
    /// Input indices, counterclockwise when seen from outside.
    pub polygon: Vec<usize>,
}

/// Edge between two facets, possibly split at collinear points.
#[derive(Debug, Clone, Copy)]
pub struct Ridge {
    pub length: f64,
    pub facets: (usize, usize),
}

#[derive(Debug, Clone)]
pub enum Hull3 {
    Empty,
    Point(usize),
    Segment(usize, usize),
    /// Planar set: counterclockwise polygon around `normal`.
    Planar { normal: Vec3, polygon: Vec<usize> },
    Full { facets: Vec<RawFacet>, ridges: Vec<Ridge> },
}

#[inline]
fn orient(a: Vec3, b: Vec3, c: Vec3, d: Vec3) -> f64 {
    let c3 = |p: Vec3| Coord3D { x: p[0], y: p[1], z: p[2] };
    orient3d(c3(a), c3(b), c3(c), c3(d))
}

struct Face {
    v: [usize; 3],
    normal: Vec3,
    outside: Vec<usize>,
    alive: bool,
}

impl Face {
    fn new(v: [usize; 3], pts: &[Vec3]) -> Self {
        let n = cross(sub(pts[v[1]], pts[v[0]]), sub(pts[v[2]], pts[v[0]]));
        Face { v, normal: n, outside: Vec::new(), alive: true }
    }

    fn sees(&self, pts: &[Vec3], p: usize) -> bool {
        orient(pts[self.v[0]], pts[self.v[1]], pts[self.v[2]], pts[p]) < 0.0
    }

    fn distance(&self, pts: &[Vec3], p: usize) -> f64 {
        dot(self.normal, sub(pts[p], pts[self.v[0]]))
    }

    fn edges(&self) -> [(usize, usize); 3] {
        let [a, b, c] = self.v;
        [(a, b), (b, c), (c, a)]
    }
}

pub fn convex_hull_3d(points: &[Vec3]) -> Hull3 {
    let mut ids: Vec<usize> = (0..points.len()).collect();
    ids.sort_by(|&i, &j| super::vector::lex_cmp(&points[i], &points[j]));
    ids.dedup_by(|a, b| points[*a] == points[*b]);
    if ids.is_empty() {
        return Hull3::Empty;
    }
    let i0 = ids[0];
    let p0 = points[i0];
    let (i1, d01) = ids
        .iter()
        .map(|&i| (i, norm(sub(points[i], p0))))
        .fold((i0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
    if d01 == 0.0 {
        return Hull3::Point(i0);
    }
    let axis = sub(points[i1], p0);
    let (i2, c2) = ids
        .iter()
        .map(|&i| (i, norm(cross(axis, sub(points[i], p0)))))
        .fold((i0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
    if c2 <= FLATNESS_TOL * d01 * d01 {
        return collinear_extremes(points, &ids, axis);
    }
    let plane_n = normalize(cross(axis, sub(points[i2], p0)));
    let (i3, h3) = ids
        .iter()
        .map(|&i| (i, dot(plane_n, sub(points[i], p0)).abs()))
        .fold((i0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
    if h3 <= FLATNESS_TOL * d01 {
        return planar_hull(points, &ids, plane_n);
    }

    let mut faces: Vec<Face> = Vec::new();
    let simplex = [i0, i1, i2, i3];
    for skip in 0..4 {
        let tri: Vec<usize> = (0..4).filter(|&k| k != skip).map(|k| simplex[k]).collect();
        let opposite = points[simplex[skip]];
        let (a, mut b, mut c) = (tri[0], tri[1], tri[2]);
        if orient(points[a], points[b], points[c], opposite) < 0.0 {
            std::mem::swap(&mut b, &mut c);
        }
        faces.push(Face::new([a, b, c], points));
    }
    let mut edge_map: HashMap<(usize, usize), usize> = HashMap::new();
    for (fi, f) in faces.iter().enumerate() {
        for e in f.edges() {
            edge_map.insert(e, fi);
        }
    }
    for &p in &ids {
        if simplex.contains(&p) {
            continue;
        }
        if let Some(f) = faces.iter_mut().find(|f| f.sees(points, p)) {
            f.outside.push(p);
        }
    }

    let mut pending: Vec<usize> = (0..faces.len()).collect();
    let mut visible: Vec<usize> = Vec::new();
    let mut mark: Vec<u32> = vec![0; faces.len()];
    let mut epoch: u32 = 0;
    while let Some(fi) = pending.pop() {
        if !faces[fi].alive || faces[fi].outside.is_empty() {
            continue;
        }
        let apex = *faces[fi]
            .outside
            .iter()
            .max_by(|&&a, &&b| faces[fi].distance(points, a).total_cmp(&faces[fi].distance(points, b)))
            .unwrap();

        epoch += 1;
        visible.clear();
        visible.push(fi);
        mark[fi] = epoch;
        let mut head = 0;
        let mut horizon: Vec<(usize, usize)> = Vec::new();
        while head < visible.len() {
            let cur = visible[head];
            head += 1;
            for (a, b) in faces[cur].edges() {
                let nb = edge_map[&(b, a)];
                if mark[nb] == epoch {
                    continue;
                }
                if faces[nb].sees(points, apex) {
                    mark[nb] = epoch;
                    visible.push(nb);
                }
            }
        }
        for &cur in &visible {
            for (a, b) in faces[cur].edges() {
                let nb = edge_map[&(b, a)];
                if mark[nb] != epoch {
                    horizon.push((a, b));
                }
            }
        }
        let mut orphans: Vec<usize> = Vec::new();
        for &cur in &visible {
            for e in faces[cur].edges() {
                edge_map.remove(&e);
            }
            faces[cur].alive = false;
            orphans.extend(faces[cur].outside.drain(..).filter(|&q| q != apex));
        }
        let first_new = faces.len();
        for &(a, b) in &horizon {
            let f = Face::new([a, b, apex], points);
            let fi_new = faces.len();
            for e in f.edges() {
                edge_map.insert(e, fi_new);
            }
            faces.push(f);
            mark.push(0);
        }
        for q in orphans {
            if let Some(f) = faces[first_new..].iter_mut().find(|f| f.sees(points, q)) {
                f.outside.push(q);
            }
        }
        pending.extend(first_new..faces.len());
    }

    merge_facets(points, &faces, &edge_map)
}

fn collinear_extremes(points: &[Vec3], ids: &[usize], axis: Vec3) -> Hull3 {
    let lo = ids
        .iter()
        .copied()
        .min_by(|&a, &b| dot(points[a], axis).total_cmp(&dot(points[b], axis)))
        .unwrap();
    let hi = ids
        .iter()
        .copied()
        .max_by(|&a, &b| dot(points[a], axis).total_cmp(&dot(points[b], axis)))
        .unwrap();
    let (a, b) = if super::vector::lex_cmp(&points[lo], &points[hi]).is_le() { (lo, hi) } else { (hi, lo) };
    Hull3::Segment(a, b)
}

fn planar_hull(points: &[Vec3], ids: &[usize], normal: Vec3) -> Hull3 {
    let (e1, e2) = orthonormal_complement(normal);
    let flat: Vec<[f64; 2]> = ids.iter().map(|&i| [dot(points[i], e1), dot(points[i], e2)]).collect();
    match convex_hull_2d(&flat) {
        Hull2::Polygon(ring) => Hull3::Planar { normal, polygon: ring.into_iter().map(|k| ids[k]).collect() },
        Hull2::Segment(a, b) => Hull3::Segment(ids[a], ids[b]),
        Hull2::Point(a) => Hull3::Point(ids[a]),
        Hull2::Empty => Hull3::Empty,
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

fn merge_facets(points: &[Vec3], faces: &[Face], edge_map: &HashMap<(usize, usize), usize>) -> Hull3 {
    let alive: Vec<usize> = (0..faces.len()).filter(|&i| faces[i].alive).collect();
    let mut slot = vec![usize::MAX; faces.len()];
    for (k, &fi) in alive.iter().enumerate() {
        slot[fi] = k;
    }
    // Slivers (exactly valid but numerically flat triangles) have unreliable
    // float normals; they join whichever neighbouring facet fits them best.
    let sliver: Vec<bool> = alive
        .iter()
        .map(|&fi| {
            let f = &faces[fi];
            let longest = f
                .edges()
                .iter()
                .map(|&(a, b)| norm(sub(points[a], points[b])))
                .fold(0.0, f64::max);
            !(norm(f.normal) > SLIVER_TOL * longest * longest)
        })
        .collect();
    let mut unit: Vec<Vec3> = alive
        .iter()
        .zip(&sliver)
        .map(|(&fi, &s)| if s { [0.0; 3] } else { normalize(faces[fi].normal) })
        .collect();
    let neighbours = |k: usize| faces[alive[k]].edges().into_iter().map(|(a, b)| slot[edge_map[&(b, a)]]);
    let mut parent: Vec<usize> = (0..alive.len()).collect();
    for k in 0..alive.len() {
        if sliver[k] {
            continue;
        }
        for nb in neighbours(k) {
            if !sliver[nb] && norm(sub(unit[k], unit[nb])) < COPLANAR_NORMAL_TOL {
                union(&mut parent, k, nb);
            }
        }
    }
    let mut attached = sliver.iter().map(|s| !s).collect::<Vec<bool>>();
    let mut remaining = sliver.iter().filter(|&&s| s).count();
    while remaining > 0 {
        let before = remaining;
        for k in 0..alive.len() {
            if attached[k] {
                continue;
            }
            let own = faces[alive[k]].normal;
            let best = neighbours(k)
                .filter(|&nb| attached[nb])
                .max_by(|&x, &y| dot(own, unit[x]).total_cmp(&dot(own, unit[y])));
            if let Some(nb) = best {
                union(&mut parent, k, nb);
                unit[k] = unit[nb];
                attached[k] = true;
                remaining -= 1;
            }
        }
        if remaining == before {
            break;
        }
    }
    let mut group_of = vec![0usize; alive.len()];
    let mut groups: Vec<usize> = Vec::new();
    let mut group_index: HashMap<usize, usize> = HashMap::new();
    for (k, slot) in group_of.iter_mut().enumerate() {
        let root = find(&mut parent, k);
        *slot = *group_index.entry(root).or_insert_with(|| {
            groups.push(root);
            groups.len() - 1
        });
    }

    let mut area_normal = vec![[0.0; 3]; groups.len()];
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); groups.len()];
    for (k, &fi) in alive.iter().enumerate() {
        let g = group_of[k];
        let n = faces[fi].normal;
        for c in 0..3 {
            area_normal[g][c] += n[c];
        }
        members[g].extend_from_slice(&faces[fi].v);
    }

    let mut facets = Vec::with_capacity(groups.len());
    for g in 0..groups.len() {
        let normal = normalize(area_normal[g]);
        let mut verts = std::mem::take(&mut members[g]);
        verts.sort_unstable();
        verts.dedup();
        let (e1, e2) = orthonormal_complement(normal);
        let flat: Vec<[f64; 2]> = verts.iter().map(|&i| [dot(points[i], e1), dot(points[i], e2)]).collect();
        let polygon = match convex_hull_2d(&flat) {
            Hull2::Polygon(ring) => ring.into_iter().map(|k| verts[k]).collect(),
            other => other.indices().into_iter().map(|k| verts[k]).collect(),
        };
        facets.push(RawFacet { normal, polygon });
    }

    let mut ridges = Vec::new();
    for (k, &fi) in alive.iter().enumerate() {
        for (a, b) in faces[fi].edges() {
            if a > b {
                continue;
            }
            let nb = slot[edge_map[&(b, a)]];
            let (ga, gb) = (group_of[k], group_of[nb]);
            if ga != gb {
                ridges.push(Ridge { length: norm(sub(points[a], points[b])), facets: (ga, gb) });
            }
        }
    }
    Hull3::Full { facets, ridges }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube() -> Vec<Vec3> {
        let mut v = Vec::new();
        for x in [0.0, 1.0] {
            for y in [0.0, 1.0] {
                for z in [0.0, 1.0] {
                    v.push([x, y, z]);
                }
            }
        }
        v
    }

    #[test]
    fn cube_has_six_square_facets() {
        let mut pts = cube();
        pts.push([0.5, 0.5, 0.5]);
        pts.push([0.5, 0.5, 1.0]);
        pts.push([0.5, 0.0, 0.0]);
        match convex_hull_3d(&pts) {
            Hull3::Full { facets, ridges } => {
                assert_eq!(facets.len(), 6);
                assert!(facets.iter().all(|f| f.polygon.len() == 4));
                let total: f64 = ridges.iter().map(|r| r.length).sum();
                assert!((total - 12.0).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn flat_and_collinear_sets() {
        let square = [[0.0, 0.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 1.0], [0.0, 1.0, 1.0], [0.5, 0.5, 1.0]];
        assert!(matches!(convex_hull_3d(&square), Hull3::Planar { ref polygon, .. } if polygon.len() == 4));
        let line = [[0.0, 0.0, 0.0], [2.0, 2.0, 2.0], [1.0, 1.0, 1.0]];
        assert!(matches!(convex_hull_3d(&line), Hull3::Segment(0, 1)));
    }
}

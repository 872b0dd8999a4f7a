use serde::{Deserialize, Serialize};

use super::{EdgeId, GraphError, MultiGraph, Vertex};

/// An immersion model of `H` in `G`: an image vertex for every vertex of `H`
/// and an image path (edge ids of `G`, in walk order) for every edge of `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImmersionModel {
    pub vertex_map: Vec<Vertex>,
    pub edge_paths: Vec<Vec<EdgeId>>,
}

impl ImmersionModel {
    pub fn identity(g: &MultiGraph) -> Self {
        ImmersionModel {
            vertex_map: g.vertices().collect(),
            edge_paths: (0..g.edge_count()).map(|e| vec![e]).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ImmersionViolation {
    /// Two vertices of `H` share an image.
    VertexImagesCollide { first: Vertex, second: Vertex, image: Vertex },
    /// The image of an `H`-edge does not join the images of its endpoints.
    WrongEndpoints { edge: EdgeId },
    /// The image of an `H`-edge revisits a vertex.
    NotAPath { edge: EdgeId },
    /// Two image paths share an edge of `G`.
    SharedEdge { first: EdgeId, second: EdgeId, g_edge: EdgeId },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ImmersionCheck {
    Valid,
    Violated(ImmersionViolation),
}

impl ImmersionCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, ImmersionCheck::Valid)
    }
}

/// Checks the three clauses of an immersion model in order and reports the
/// first one that fails.
pub fn verify_immersion_model(
    g: &MultiGraph,
    h: &MultiGraph,
    model: &ImmersionModel,
) -> Result<ImmersionCheck, GraphError> {
    if model.vertex_map.len() != h.vertex_count() {
        return Err(GraphError::MalformedModel(format!(
            "{} vertex images for {} vertices",
            model.vertex_map.len(),
            h.vertex_count()
        )));
    }
    if model.edge_paths.len() != h.edge_count() {
        return Err(GraphError::MalformedModel(format!(
            "{} edge images for {} edges",
            model.edge_paths.len(),
            h.edge_count()
        )));
    }
    if let Some(&v) = model.vertex_map.iter().find(|&&v| !g.has_vertex(v)) {
        return Err(GraphError::MalformedModel(format!("vertex image {v} not in G")));
    }
    let walks = model
        .edge_paths
        .iter()
        .enumerate()
        .map(|(he, path)| walk(g, he, path, model.vertex_map[h.endpoints(he).0]))
        .collect::<Result<Vec<_>, _>>()?;

    let mut owner = vec![usize::MAX; g.vertex_count()];
    for (x, &image) in model.vertex_map.iter().enumerate() {
        if owner[image] != usize::MAX {
            return Ok(ImmersionCheck::Violated(ImmersionViolation::VertexImagesCollide {
                first: owner[image],
                second: x,
                image,
            }));
        }
        owner[image] = x;
    }

    for (he, vertices) in walks.iter().enumerate() {
        let (x, y) = h.endpoints(he);
        let (px, py) = (model.vertex_map[x], model.vertex_map[y]);
        let ends = vertices.first().zip(vertices.last());
        let joins = matches!(ends, Some((&s, &t)) if (s, t) == (px, py) || (s, t) == (py, px));
        if !joins || vertices.len() < 2 {
            return Ok(ImmersionCheck::Violated(ImmersionViolation::WrongEndpoints { edge: he }));
        }
        let mut seen = vertices.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != vertices.len() {
            return Ok(ImmersionCheck::Violated(ImmersionViolation::NotAPath { edge: he }));
        }
    }

    let mut used_by = vec![usize::MAX; g.edge_count()];
    for (he, path) in model.edge_paths.iter().enumerate() {
        for &e in path {
            if used_by[e] != usize::MAX {
                return Ok(ImmersionCheck::Violated(ImmersionViolation::SharedEdge {
                    first: used_by[e],
                    second: he,
                    g_edge: e,
                }));
            }
            used_by[e] = he;
        }
    }
    Ok(ImmersionCheck::Valid)
}

/// Vertex sequence of the walk along `path`, started at `preferred` when the
/// first edge touches it and at the other end of the first edge otherwise.
fn walk(g: &MultiGraph, he: EdgeId, path: &[EdgeId], preferred: Vertex) -> Result<Vec<Vertex>, GraphError> {
    if let Some(&e) = path.iter().find(|&&e| e >= g.edge_count()) {
        return Err(GraphError::MalformedModel(format!("edge image {e} not in G")));
    }
    let Some(&first) = path.first() else {
        return Ok(Vec::new());
    };
    let (a, b) = g.endpoints(first);
    let starts = if b == preferred { [b, a] } else { [a, b] };
    'start: for start in starts {
        let mut vertices = vec![start];
        let mut at = start;
        for &e in path {
            let (u, v) = g.endpoints(e);
            at = match at {
                _ if at == u => v,
                _ if at == v => u,
                _ => continue 'start,
            };
            vertices.push(at);
        }
        return Ok(vertices);
    }
    Err(GraphError::MalformedModel(format!("image of edge {he} is not a contiguous walk")))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    fn triangle_in_c6() -> (MultiGraph, MultiGraph, ImmersionModel) {
        let g = cycle(6); // edges i: (i, i+1)
        let h = cycle(3); // (0,1), (1,2), (2,0)
        let model = ImmersionModel {
            vertex_map: vec![0, 2, 4],
            edge_paths: vec![vec![0, 1], vec![2, 3], vec![4, 5]],
        };
        (g, h, model)
    }

    #[test]
    fn triangle_immerses_in_c6() {
        let (g, h, model) = triangle_in_c6();
        assert_eq!(verify_immersion_model(&g, &h, &model).unwrap(), ImmersionCheck::Valid);
    }

    #[test]
    fn reversed_paths_are_accepted() {
        let (g, h, mut model) = triangle_in_c6();
        model.edge_paths[2] = vec![5, 4];
        assert!(verify_immersion_model(&g, &h, &model).unwrap().is_valid());
    }

    #[test]
    fn overlapping_arcs_fail_disjointness() {
        let (g, h, mut model) = triangle_in_c6();
        // 4 -> 0 the long way round, through the other two arcs
        model.edge_paths[2] = vec![3, 2, 1, 0];
        assert_eq!(
            verify_immersion_model(&g, &h, &model).unwrap(),
            ImmersionCheck::Violated(ImmersionViolation::SharedEdge { first: 1, second: 2, g_edge: 3 })
        );
    }

    #[test]
    fn shared_edge_reported() {
        let g = parallel(1);
        let h = parallel(2);
        let model = ImmersionModel { vertex_map: vec![0, 1], edge_paths: vec![vec![0], vec![0]] };
        assert_eq!(
            verify_immersion_model(&g, &h, &model).unwrap(),
            ImmersionCheck::Violated(ImmersionViolation::SharedEdge { first: 0, second: 1, g_edge: 0 })
        );
    }

    #[test]
    fn colliding_images_reported_first() {
        let g = path(3);
        let h = path(2);
        let model = ImmersionModel { vertex_map: vec![1, 1], edge_paths: vec![vec![0]] };
        assert!(matches!(
            verify_immersion_model(&g, &h, &model).unwrap(),
            ImmersionCheck::Violated(ImmersionViolation::VertexImagesCollide { .. })
        ));
    }

    #[test]
    fn non_contiguous_path_is_malformed() {
        let g = path(4);
        let h = path(2);
        let model = ImmersionModel { vertex_map: vec![0, 3], edge_paths: vec![vec![0, 2]] };
        assert!(matches!(verify_immersion_model(&g, &h, &model), Err(GraphError::MalformedModel(_))));
    }

    #[test]
    fn identity_model_is_valid() {
        let g = double_k4();
        let model = ImmersionModel::identity(&g);
        assert!(verify_immersion_model(&g, &g, &model).unwrap().is_valid());
    }
}

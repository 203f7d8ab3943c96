//! Wavefront OBJ export of covers and XYZ export of point clouds.

use std::io::{self, Write};

use crate::cover::OctahedronCover;
use crate::geometry::Point3;

/// Faces of an octahedron over its vertices `+x, +y, +z, -x, -y, -z`
/// (1-based, counter-clockwise seen from outside).
pub const OCTAHEDRON_FACES: [[usize; 3]; 8] = [
    [1, 2, 3],
    [2, 4, 3],
    [4, 5, 3],
    [5, 1, 3],
    [2, 1, 6],
    [4, 2, 6],
    [5, 4, 6],
    [1, 5, 6],
];

/// One `o` object per octahedron with its six vertices and eight triangles.
pub fn write_obj<W: Write + ?Sized>(cover: &OctahedronCover, out: &mut W) -> io::Result<()> {
    writeln!(
        out,
        "# {} octahedra, order {}, theta {}",
        cover.len(),
        cover.order,
        cover.theta()
    )?;
    for (i, oct) in cover.octahedra.iter().enumerate() {
        writeln!(out, "o octahedron_{i}")?;
        for v in &oct.vertices {
            writeln!(out, "v {} {} {}", v.x, v.y, v.z)?;
        }
        let base = 6 * i;
        for [a, b, c] in OCTAHEDRON_FACES {
            writeln!(out, "f {} {} {}", base + a, base + b, base + c)?;
        }
    }
    Ok(())
}

/// `v` records of an OBJ document, in file order.
pub fn read_obj_vertices(text: &str) -> Vec<Point3> {
    text.lines()
        .filter_map(|line| line.strip_prefix("v "))
        .filter_map(|rest| {
            let mut it = rest.split_whitespace().map(|t| t.parse::<f64>());
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(x)), Some(Ok(y)), Some(Ok(z))) => Some(Point3::new(x, y, z)),
                _ => None,
            }
        })
        .collect()
}

pub fn write_xyz<W: Write + ?Sized>(points: &[Point3], out: &mut W) -> io::Result<()> {
    for p in points {
        writeln!(out, "{} {} {}", p.x, p.y, p.z)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{Octahedron, RadiusSolution};
    use crate::geometry::ScaledTaxicabMetric;

    fn cover() -> OctahedronCover {
        let theta = 0.25;
        let octahedra = vec![
            Octahedron::new(Point3::new(1.0, 2.0, 3.0), 0.5, theta),
            Octahedron::new(Point3::new(-4.0, 0.125, 1e-7), 2.0, theta),
        ];
        OctahedronCover {
            order: 1,
            metric: ScaledTaxicabMetric {
                theta,
                theta1: theta,
                theta2: 1.0,
                delta: 4.0,
            },
            solution: RadiusSolution {
                primary_index: 1,
                secondary_index: 0,
                diameter: 1.0,
                radii: vec![0.5, 2.0],
            },
            octahedra,
        }
    }

    fn sub(a: Point3, b: Point3) -> [f64; 3] {
        [a.x - b.x, a.y - b.y, a.z - b.z]
    }

    #[test]
    fn faces_point_outwards() {
        let oct = Octahedron::new(Point3::new(3.0, -1.0, 2.0), 1.5, 0.4);
        for [a, b, c] in OCTAHEDRON_FACES {
            let (va, vb, vc) = (oct.vertices[a - 1], oct.vertices[b - 1], oct.vertices[c - 1]);
            let (u, v) = (sub(vb, va), sub(vc, va));
            let normal = [
                u[1] * v[2] - u[2] * v[1],
                u[2] * v[0] - u[0] * v[2],
                u[0] * v[1] - u[1] * v[0],
            ];
            let centroid = Point3::new(
                (va.x + vb.x + vc.x) / 3.0,
                (va.y + vb.y + vc.y) / 3.0,
                (va.z + vb.z + vc.z) / 3.0,
            );
            let out = sub(centroid, oct.center);
            assert!(normal[0] * out[0] + normal[1] * out[1] + normal[2] * out[2] > 0.0);
        }
    }

    #[test]
    fn obj_layout_and_exact_vertices() {
        let cover = cover();
        let mut buf = Vec::new();
        write_obj(&cover, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().filter(|l| l.starts_with("o ")).count(), 2);
        assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 16);
        assert!(text.contains("f 7 8 9"));
        let verts = read_obj_vertices(&text);
        let expected: Vec<Point3> = cover.octahedra.iter().flat_map(|o| o.vertices).collect();
        assert_eq!(verts, expected);
    }

    #[test]
    fn xyz_lines() {
        let mut buf = Vec::new();
        write_xyz(&[Point3::new(0.5, -1.0, 1e-300)], &mut buf).unwrap();
        let line = String::from_utf8(buf).unwrap();
        let parsed: Vec<f64> = line.split_whitespace().map(|t| t.parse().unwrap()).collect();
        assert_eq!(parsed, vec![0.5, -1.0, 1e-300]);
    }
}

//! The cover report: a JSON document with every floating-point number
//! printed with 17 significant digits, enough to reproduce each `f64`
//! exactly.

use std::io::{self, Write};

use serde::ser::Serialize;
use serde::Deserialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::cover::{solve_radii, ContainmentSummary, Octahedron, OctahedronCover};
use crate::geometry::Point3;
use crate::ifs::{IfsSystem, MapCoefficients};

#[derive(Debug, Clone, PartialEq, serde::Serialize, Deserialize)]
pub struct MapRecord {
    /// Base cells `[k, l]` of the composition, outermost first.
    pub factors: Vec<[usize; 2]>,
    pub coefficients: MapCoefficients,
    pub contraction: f64,
    pub fixed_point: Point3,
    pub radius: f64,
    pub vertices: [Point3; 6],
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, Deserialize)]
pub struct CoverReport {
    pub order: u32,
    pub theta: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub delta: f64,
    /// `M`, the `ρ`-diameter of the fixed points.
    pub diameter: f64,
    pub primary_index: usize,
    pub secondary_index: usize,
    pub map_count: usize,
    pub max_radius: f64,
    pub containment: Option<ContainmentSummary>,
    pub maps: Vec<MapRecord>,
}

impl CoverReport {
    pub fn new(system: &IfsSystem, cover: &OctahedronCover, containment: Option<ContainmentSummary>) -> Self {
        let maps = system
            .maps
            .iter()
            .zip(&cover.octahedra)
            .map(|(map, oct)| MapRecord {
                factors: map.factors.iter().map(|&(k, l)| [k, l]).collect(),
                coefficients: map.coeffs,
                contraction: map.contraction,
                fixed_point: map.fixed_point,
                radius: oct.radius,
                vertices: oct.vertices,
            })
            .collect();
        let metric = cover.metric;
        Self {
            order: cover.order,
            theta: metric.theta,
            theta1: metric.theta1,
            theta2: metric.theta2,
            delta: metric.delta,
            diameter: cover.solution.diameter,
            primary_index: cover.solution.primary_index,
            secondary_index: cover.solution.secondary_index,
            map_count: cover.len(),
            max_radius: cover.max_radius(),
            containment,
            maps,
        }
    }

    /// Re-derives the radii from the recorded constants and diameter, and
    /// the vertices from the recorded centres and radii.
    pub fn check_consistency(&self) -> Result<(), String> {
        if self.maps.len() != self.map_count {
            return Err(format!("{} records for {} maps", self.maps.len(), self.map_count));
        }
        let constants: Vec<f64> = self.maps.iter().map(|m| m.contraction).collect();
        let solution = solve_radii(&constants, self.diameter).map_err(|e| e.to_string())?;
        if (solution.primary_index, solution.secondary_index) != (self.primary_index, self.secondary_index) {
            return Err(format!(
                "top-two indices ({}, {}) do not match recomputed ({}, {})",
                self.primary_index, self.secondary_index, solution.primary_index, solution.secondary_index
            ));
        }
        for (i, (rec, r)) in self.maps.iter().zip(&solution.radii).enumerate() {
            if rec.radius != *r {
                return Err(format!("map {i}: radius {} but constants give {r}", rec.radius));
            }
            let expected = Octahedron::new(rec.fixed_point, rec.radius, self.theta);
            if expected.vertices != rec.vertices {
                return Err(format!("map {i}: vertices disagree with centre and radius"));
            }
        }
        Ok(())
    }

    pub fn write_json<W: Write>(&self, writer: W) -> serde_json::Result<()> {
        let mut ser = serde_json::Serializer::with_formatter(writer, SignificantDigits::default());
        self.serialize(&mut ser)
    }

    pub fn to_json(&self) -> String {
        let mut buf = Vec::new();
        self.write_json(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("JSON is UTF-8")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// Pretty JSON with floats as `d.dddddddddddddddde±x`.
#[derive(Default)]
pub struct SignificantDigits {
    pretty: PrettyFormatter<'static>,
}

impl Formatter for SignificantDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.begin_array(w)
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_array(w)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.pretty.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_array_value(w)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.begin_object(w)
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_object(w)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.pretty.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_object_value(w)
    }
}

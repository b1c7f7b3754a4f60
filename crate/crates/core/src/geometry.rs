//! Planar point sets with exact coordinates and the three moves used by the
//! constructions: regular polygons, rotation about a point by a rational
//! turn, and reflection across the line through two points.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;
use num_integer::Integer;

use crate::cyclo::{CycloField, CycloNum};
use crate::error::{Error, Result};

/// A rotation angle as a reduced fraction of a full revolution, strictly between 0 and 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Turn {
    num: u32,
    den: u32,
}

impl Turn {
    pub fn new(num: u32, den: u32) -> Result<Turn> {
        if den == 0 || num == 0 || num >= den {
            return Err(Error::InvalidTurn { num, den });
        }
        let g = num.gcd(&den);
        Ok(Turn { num: num / g, den: den / g })
    }

    pub const HALF: Turn = Turn { num: 1, den: 2 };

    pub fn num(self) -> u32 {
        self.num
    }

    pub fn den(self) -> u32 {
        self.den
    }

    /// Reduced turns ordered by denominator, then numerator: 1/2, 1/3, 2/3, 1/4, 3/4, 1/5, …
    pub fn pool() -> impl Iterator<Item = Turn> {
        (2u32..).flat_map(|den| (1..den).filter(move |num| num.gcd(&den) == 1).map(move |num| Turn { num, den }))
    }
}

impl fmt::Display for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// One recorded step of a construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transform {
    /// Vertices `ζ_s^0, …, ζ_s^{s-1}`; always the first entry of a replayable log.
    BasePolygon { sides: u32 },
    /// Adds the image of polygon `copy` rotated about point `center` by `turn`.
    Rotation { copy: usize, center: usize, turn: Turn },
    /// Adds the mirror image of polygon `copy` across the line through points `edge.0` and `edge.1`.
    Reflection { copy: usize, edge: (usize, usize) },
    /// Moves every point: rotation about an arbitrary field element.
    RotateAll { center: CycloNum, turn: Turn },
    /// Moves every point: reflection across the line through `a` and `b`.
    ReflectAll { a: CycloNum, b: CycloNum },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TransformLog {
    entries: Vec<Transform>,
}

impl TransformLog {
    pub fn entries(&self) -> &[Transform] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn pushed(&self, t: Transform) -> TransformLog {
        let mut entries = self.entries.clone();
        entries.push(t);
        TransformLog { entries }
    }
}

fn rotation_factor(field: &Arc<CycloField>, turn: Turn) -> CycloNum {
    let step = field.order() / turn.den;
    CycloNum::zeta_pow(field, (turn.num * step) as i64)
}

/// `p ↦ center + ζ_b^a (p - center)`; all arguments in one field that contains `ζ_b`.
fn rotate_point_in(p: &CycloNum, center: &CycloNum, factor: &CycloNum) -> CycloNum {
    center + &(factor * &(p - center))
}

/// Precomputed `(b - a) / conj(b - a)` for reflections across line `ab`.
fn reflection_factor(a: &CycloNum, b: &CycloNum) -> Result<CycloNum> {
    let d = b.try_sub(a)?;
    if d.is_zero() {
        return Err(Error::DegenerateLine);
    }
    d.try_mul(&d.conj().inv()?)
}

fn reflect_point_in(p: &CycloNum, a: &CycloNum, factor: &CycloNum) -> CycloNum {
    a + &(factor * &(p - a).conj())
}

/// Rotation of a single point; the result lives in the join of all involved fields.
pub fn rotate_point(p: &CycloNum, center: &CycloNum, turn: Turn) -> Result<CycloNum> {
    let rot = CycloField::new(turn.den)?;
    let field = CycloField::join(&CycloField::join(p.field(), center.field()), &rot);
    let factor = rotation_factor(&field, turn);
    Ok(rotate_point_in(&p.embed(&field)?, &center.embed(&field)?, &factor))
}

/// Reflection of a single point across the line through `a` and `b`.
pub fn reflect_point(p: &CycloNum, a: &CycloNum, b: &CycloNum) -> Result<CycloNum> {
    let field = CycloField::join(&CycloField::join(p.field(), a.field()), b.field());
    let (a, b) = (a.embed(&field)?, b.embed(&field)?);
    let factor = reflection_factor(&a, &b)?;
    Ok(reflect_point_in(&p.embed(&field)?, &a, &factor))
}

/// `|p - q|²` as a real field element.
pub fn squared_distance(p: &CycloNum, q: &CycloNum) -> Result<CycloNum> {
    Ok(p.try_sub(q)?.norm_sq())
}

/// Pairwise distinct points in one cyclotomic field, the polygon copies they
/// form, and the log that produced them.
#[derive(Clone, Debug)]
pub struct PointSet {
    field: Arc<CycloField>,
    points: Vec<CycloNum>,
    copies: Vec<Vec<usize>>,
    log: TransformLog,
}

impl PartialEq for PointSet {
    fn eq(&self, other: &Self) -> bool {
        self.field.order() == other.field.order() && self.points == other.points
    }
}

impl Eq for PointSet {}

impl PointSet {
    /// Regular polygon at unit circumradius with a vertex at 1.
    pub fn regular_ngon(sides: u32) -> Result<PointSet> {
        if sides < 3 {
            return Err(Error::DegeneratePolygon { sides });
        }
        let field = CycloField::new(sides)?;
        let points = (0..sides as i64).map(|j| CycloNum::zeta_pow(&field, j)).collect();
        Ok(PointSet {
            field,
            points,
            copies: alloc::vec![(0..sides as usize).collect()],
            log: TransformLog { entries: alloc::vec![Transform::BasePolygon { sides }] },
        })
    }

    /// A set with no recorded provenance. Points are embedded into `field`.
    pub fn from_points(field: &Arc<CycloField>, points: Vec<CycloNum>) -> Result<PointSet> {
        let points = points.iter().map(|p| p.embed(field)).collect::<Result<Vec<_>>>()?;
        let mut seen = HashMap::with_capacity(points.len());
        for (index, p) in points.iter().enumerate() {
            if seen.insert(p.clone(), index).is_some() {
                return Err(Error::DuplicatePoint { index });
            }
        }
        Ok(PointSet { field: field.clone(), points, copies: Vec::new(), log: TransformLog::default() })
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn points(&self) -> &[CycloNum] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Polygon copies as cycles of point indices, in creation order.
    pub fn copies(&self) -> &[Vec<usize>] {
        &self.copies
    }

    pub fn log(&self) -> &TransformLog {
        &self.log
    }

    pub fn squared_distance(&self, i: usize, j: usize) -> CycloNum {
        (&self.points[i] - &self.points[j]).norm_sq()
    }

    pub fn index_of(&self, p: &CycloNum) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    /// The same points in a larger field.
    pub fn embed(&self, target: &Arc<CycloField>) -> Result<PointSet> {
        Ok(PointSet {
            field: target.clone(),
            points: self.points.iter().map(|p| p.embed(target)).collect::<Result<_>>()?,
            copies: self.copies.clone(),
            log: self.log.clone(),
        })
    }

    fn point(&self, index: usize) -> Result<&CycloNum> {
        self.points.get(index).ok_or(Error::IndexOutOfRange { index, len: self.points.len() })
    }

    fn copy(&self, index: usize) -> Result<&Vec<usize>> {
        self.copies.get(index).ok_or(Error::IndexOutOfRange { index, len: self.copies.len() })
    }

    /// Rotates every point about `center` by `turn`.
    pub fn rotate_about(&self, center: &CycloNum, turn: Turn) -> Result<PointSet> {
        let rot = CycloField::new(turn.den)?;
        let field = CycloField::join(&CycloField::join(&self.field, center.field()), &rot);
        let moved = self.embed(&field)?;
        let c = center.embed(&field)?;
        let factor = rotation_factor(&field, turn);
        Ok(PointSet {
            points: moved.points.iter().map(|p| rotate_point_in(p, &c, &factor)).collect(),
            log: self.log.pushed(Transform::RotateAll { center: center.clone(), turn }),
            ..moved
        })
    }

    /// Reflects every point across the line through `a` and `b`.
    pub fn reflect_line(&self, a: &CycloNum, b: &CycloNum) -> Result<PointSet> {
        let field = CycloField::join(&CycloField::join(&self.field, a.field()), b.field());
        let moved = self.embed(&field)?;
        let (ea, eb) = (a.embed(&field)?, b.embed(&field)?);
        let factor = reflection_factor(&ea, &eb)?;
        Ok(PointSet {
            points: moved.points.iter().map(|p| reflect_point_in(p, &ea, &factor)).collect(),
            log: self.log.pushed(Transform::ReflectAll { a: a.clone(), b: b.clone() }),
            ..moved
        })
    }

    /// Union with exact deduplication. The result keeps the polygon copies of
    /// both sides but has no replayable log.
    pub fn union(&self, other: &PointSet) -> Result<PointSet> {
        let field = CycloField::join(&self.field, &other.field);
        let mut out = self.embed(&field)?;
        out.log = TransformLog::default();
        let mut index: HashMap<CycloNum, usize> =
            out.points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut remap = Vec::with_capacity(other.len());
        for p in &other.points {
            let p = p.embed(&field)?;
            let next = out.points.len();
            let i = *index.entry(p.clone()).or_insert(next);
            if i == next {
                out.points.push(p);
            }
            remap.push(i);
        }
        out.copies.extend(other.copies.iter().map(|c| c.iter().map(|&i| remap[i]).collect()));
        Ok(out)
    }

    /// Appends `images` (one per vertex of a new copy) with exact deduplication.
    /// Returns the extended set and how many images coincided with existing points.
    fn add_copy(&self, field: &Arc<CycloField>, images: Vec<CycloNum>, entry: Transform) -> (PointSet, usize) {
        let mut points = self.points.clone();
        let index: HashMap<&CycloNum, usize> = self.points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut cycle = Vec::with_capacity(images.len());
        let mut shared = 0;
        let mut fresh = Vec::new();
        for p in images {
            if let Some(&i) = index.get(&p) {
                shared += 1;
                cycle.push(i);
            } else if let Some(k) = fresh.iter().position(|q| *q == p) {
                // an image hitting another image of the same copy; impossible for isometries
                cycle.push(self.points.len() + k);
            } else {
                cycle.push(self.points.len() + fresh.len());
                fresh.push(p);
            }
        }
        drop(index);
        points.extend(fresh);
        let mut copies = self.copies.clone();
        copies.push(cycle);
        (PointSet { field: field.clone(), points, copies, log: self.log.pushed(entry) }, shared)
    }

    /// Adds the image of polygon `copy` rotated about point `center`.
    /// Returns the new set and the number of image points already present.
    pub fn add_rotated_copy(&self, copy: usize, center: usize, turn: Turn) -> Result<(PointSet, usize)> {
        let cycle = self.copy(copy)?.clone();
        self.point(center)?;
        let rot = CycloField::new(turn.den)?;
        let field = CycloField::join(&self.field, &rot);
        let base = self.embed(&field)?;
        let factor = rotation_factor(&field, turn);
        let c = &base.points[center];
        let images = cycle.iter().map(|&i| rotate_point_in(&base.points[i], c, &factor)).collect();
        Ok(base.add_copy(&field, images, Transform::Rotation { copy, center, turn }))
    }

    /// Adds the mirror image of polygon `copy` across the line through points `edge`.
    pub fn add_reflected_copy(&self, copy: usize, edge: (usize, usize)) -> Result<(PointSet, usize)> {
        let cycle = self.copy(copy)?.clone();
        let a = self.point(edge.0)?;
        let b = self.point(edge.1)?;
        let factor = reflection_factor(a, b)?;
        let images = cycle.iter().map(|&i| reflect_point_in(&self.points[i], a, &factor)).collect();
        Ok(self.add_copy(&self.field, images, Transform::Reflection { copy, edge }))
    }

    /// Rebuilds a point set from its log.
    pub fn replay(log: &TransformLog) -> Result<PointSet> {
        let mut entries = log.entries.iter();
        let mut ps = match entries.next() {
            Some(Transform::BasePolygon { sides }) => PointSet::regular_ngon(*sides)?,
            _ => return Err(Error::NoProvenance),
        };
        for entry in entries {
            ps = match entry {
                Transform::BasePolygon { .. } => return Err(Error::NoProvenance),
                Transform::Rotation { copy, center, turn } => ps.add_rotated_copy(*copy, *center, *turn)?.0,
                Transform::Reflection { copy, edge } => ps.add_reflected_copy(*copy, *edge)?.0,
                Transform::RotateAll { center, turn } => ps.rotate_about(center, *turn)?,
                Transform::ReflectAll { a, b } => ps.reflect_line(a, b)?,
            };
        }
        Ok(ps)
    }
}

//! Versioned JSON documents for hands and objects.
//!
//! One document per file. Hands use the `.grasp.json` extension, objects and
//! object sets `.object.json`. Every document carries `schemaVersion` and
//! `kind`; unknown fields are reported as warnings and otherwise ignored.
//!
//! Numbers are written rounded to 6 decimal places, keys in a fixed order,
//! two-space indentation and a trailing newline.

use graspspan_core::{
    validate_hand, validate_object, ConfigRole, DistalContact, GraspType, HandDraft, HandRecord,
    Issue, NaiveDate, ObjectDraft, ObjectSpec, OneTimeDraft, PairDraft, PairLabel, ProfileDraft,
    Provenance, SetDraft,
};
use serde_json::{json, Map, Value};

/// Version written to every document.
pub const SCHEMA_VERSION: &str = "1.0";

/// Documents larger than this are rejected before parsing.
pub const MAX_DOCUMENT_BYTES: usize = 10 * 1024 * 1024;

pub const HAND_EXTENSION: &str = ".grasp.json";
pub const OBJECT_EXTENSION: &str = ".object.json";

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Hand(HandRecord),
    Object(ObjectSpec),
    ObjectSet(Vec<ObjectSpec>),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Hand(_) => "hand",
            Payload::Object(_) => "object",
            Payload::ObjectSet(_) => "object-set",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DocumentEnvelope {
    pub schema_version: String,
    pub payload: Payload,
}

impl DocumentEnvelope {
    pub fn new(payload: Payload) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.into(),
            payload,
        }
    }

    pub fn kind(&self) -> &'static str {
        self.payload.kind()
    }
}

/// Non-fatal finding while parsing, currently only unknown fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Warning {
    pub path: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("document is {0} bytes, limit is {MAX_DOCUMENT_BYTES}")]
    TooLarge(usize),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error at {path}: {message}")]
    Schema {
        path: String,
        /// Violation code when the error comes from record validation.
        code: Option<&'static str>,
        message: String,
    },
    #[error("unsupported schema version {0:?}, this build reads 1.x")]
    UnsupportedVersion(String),
}

impl ParseError {
    fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        ParseError::Schema {
            path: path.into(),
            code: None,
            message: message.into(),
        }
    }

    fn from_issue(prefix: &str, issue: &Issue) -> Self {
        ParseError::Schema {
            path: format!("{prefix}{}", issue.path),
            code: Some(issue.code.as_str()),
            message: issue.message.clone(),
        }
    }

    /// JSON pointer of a schema error.
    pub fn path(&self) -> Option<&str> {
        match self {
            ParseError::Schema { path, .. } => Some(path),
            _ => None,
        }
    }
}

/// A successfully parsed document with its warnings.
#[derive(Debug, Clone, PartialEq)]
pub struct Parsed<T> {
    pub value: T,
    pub warnings: Vec<Warning>,
}

/// Parses and fully validates a document of any kind.
pub fn parse_document(bytes: &[u8]) -> Result<Parsed<DocumentEnvelope>, ParseError> {
    let (root, version, kind) = read_root(bytes)?;
    let mut warnings = Vec::new();
    let payload = match kind.as_str() {
        "hand" => {
            let draft = hand_draft(&root, &mut warnings)?;
            if let Some(first) = validate_hand(&draft).first() {
                return Err(ParseError::from_issue("", first));
            }
            Payload::Hand(
                HandRecord::new(draft).map_err(|e| ParseError::schema("", e.to_string()))?,
            )
        }
        "object" => Payload::Object(object(
            &root,
            "",
            &["schemaVersion", "kind"],
            &mut warnings,
        )?),
        "object-set" => {
            let mut obj = Obj::new(&root, "")?;
            obj.skip("schemaVersion");
            obj.skip("kind");
            let (items, path) = obj.req_array("objects")?;
            let objects = items
                .iter()
                .enumerate()
                .map(|(i, v)| object(v, &format!("{path}/{i}"), &[], &mut warnings))
                .collect::<Result<Vec<_>, _>>()?;
            obj.finish(&mut warnings);
            Payload::ObjectSet(objects)
        }
        other => {
            return Err(ParseError::schema(
                "/kind",
                format!("unknown kind {other:?}, expected hand, object or object-set"),
            ))
        }
    };
    Ok(Parsed {
        value: DocumentEnvelope {
            schema_version: version,
            payload,
        },
        warnings,
    })
}

/// Reads a hand document without running record validation, so callers can
/// report every violation instead of the first.
pub fn parse_hand_draft(bytes: &[u8]) -> Result<Parsed<HandDraft>, ParseError> {
    let (root, _, kind) = read_root(bytes)?;
    if kind != "hand" {
        return Err(ParseError::schema(
            "/kind",
            format!("expected a hand document, found {kind:?}"),
        ));
    }
    let mut warnings = Vec::new();
    let value = hand_draft(&root, &mut warnings)?;
    Ok(Parsed { value, warnings })
}

/// Parses a hand document.
pub fn parse_hand(bytes: &[u8]) -> Result<Parsed<HandRecord>, ParseError> {
    let parsed = parse_document(bytes)?;
    match parsed.value.payload {
        Payload::Hand(h) => Ok(Parsed {
            value: h,
            warnings: parsed.warnings,
        }),
        other => Err(ParseError::schema(
            "/kind",
            format!("expected a hand document, found {:?}", other.kind()),
        )),
    }
}

/// Parses an object or object-set document into a list of objects.
pub fn parse_objects(bytes: &[u8]) -> Result<Parsed<Vec<ObjectSpec>>, ParseError> {
    let parsed = parse_document(bytes)?;
    let value = match parsed.value.payload {
        Payload::Object(o) => vec![o],
        Payload::ObjectSet(v) => v,
        Payload::Hand(_) => {
            return Err(ParseError::schema(
                "/kind",
                "expected an object document, found \"hand\"",
            ))
        }
    };
    Ok(Parsed {
        value,
        warnings: parsed.warnings,
    })
}

fn read_root(bytes: &[u8]) -> Result<(Value, String, String), ParseError> {
    if bytes.len() > MAX_DOCUMENT_BYTES {
        return Err(ParseError::TooLarge(bytes.len()));
    }
    let root: Value = serde_json::from_slice(bytes).map_err(|e| ParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let obj = root
        .as_object()
        .ok_or_else(|| ParseError::schema("", "document root must be an object"))?;
    let version = match obj.get("schemaVersion") {
        None => {
            return Err(ParseError::schema(
                "/schemaVersion",
                "missing required field",
            ))
        }
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(ParseError::schema("/schemaVersion", "expected a string")),
    };
    if version.split_once('.').map(|(major, _)| major) != Some("1") {
        return Err(ParseError::UnsupportedVersion(version));
    }
    let kind = match obj.get("kind") {
        None => return Err(ParseError::schema("/kind", "missing required field")),
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(ParseError::schema("/kind", "expected a string")),
    };
    Ok((root, version, kind))
}

/// Escapes a key for use as a JSON pointer segment.
fn pointer_segment(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

/// Field reader over one JSON object that remembers which keys were used.
struct Obj<'a> {
    map: &'a Map<String, Value>,
    path: String,
    seen: Vec<&'a str>,
}

impl<'a> Obj<'a> {
    fn new(value: &'a Value, path: &str) -> Result<Self, ParseError> {
        let map = value
            .as_object()
            .ok_or_else(|| ParseError::schema(path, "expected an object"))?;
        Ok(Self {
            map,
            path: path.into(),
            seen: Vec::new(),
        })
    }

    fn child(&self, key: &str) -> String {
        format!("{}/{}", self.path, pointer_segment(key))
    }

    fn skip(&mut self, key: &'a str) {
        self.seen.push(key);
    }

    fn get(&mut self, key: &'a str) -> Option<&'a Value> {
        self.seen.push(key);
        self.map.get(key)
    }

    fn req(&mut self, key: &'a str) -> Result<&'a Value, ParseError> {
        let path = self.child(key);
        self.get(key)
            .ok_or_else(|| ParseError::schema(path, "missing required field"))
    }

    fn num(&self, key: &str, v: &Value) -> Result<f64, ParseError> {
        v.as_f64()
            .ok_or_else(|| ParseError::schema(self.child(key), "expected a number"))
    }

    fn req_f64(&mut self, key: &'a str) -> Result<f64, ParseError> {
        let v = self.req(key)?;
        self.num(key, v)
    }

    fn opt_f64(&mut self, key: &'a str) -> Result<Option<f64>, ParseError> {
        match self.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(v) => self.num(key, v).map(Some),
        }
    }

    fn req_str(&mut self, key: &'a str) -> Result<&'a str, ParseError> {
        let v = self.req(key)?;
        v.as_str()
            .ok_or_else(|| ParseError::schema(self.child(key), "expected a string"))
    }

    fn opt_str(&mut self, key: &'a str) -> Result<Option<String>, ParseError> {
        match self.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(_) => Err(ParseError::schema(self.child(key), "expected a string")),
        }
    }

    fn opt_bool(&mut self, key: &'a str) -> Result<Option<bool>, ParseError> {
        match self.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(Value::Bool(b)) => Ok(Some(*b)),
            Some(_) => Err(ParseError::schema(
                self.child(key),
                "expected true or false",
            )),
        }
    }

    fn req_enum<T>(
        &mut self,
        key: &'a str,
        parse: fn(&str) -> Option<T>,
        expected: &str,
    ) -> Result<T, ParseError> {
        let s = self.req_str(key)?;
        parse(s).ok_or_else(|| {
            ParseError::schema(
                self.child(key),
                format!("unknown value {s:?}, expected {expected}"),
            )
        })
    }

    fn req_array(&mut self, key: &'a str) -> Result<(&'a Vec<Value>, String), ParseError> {
        let v = self.req(key)?;
        let path = self.child(key);
        v.as_array()
            .map(|a| (a, path.clone()))
            .ok_or_else(|| ParseError::schema(path, "expected an array"))
    }

    fn req_obj(&mut self, key: &'a str) -> Result<Obj<'a>, ParseError> {
        let v = self.req(key)?;
        Obj::new(v, &self.child(key))
    }

    /// Adds a warning for every key that was never looked at.
    fn finish(self, warnings: &mut Vec<Warning>) {
        for key in self.map.keys() {
            if !self.seen.contains(&key.as_str()) {
                warnings.push(Warning {
                    path: self.child(key),
                    message: format!("unknown field {key:?} ignored"),
                });
            }
        }
    }
}

fn hand_draft(root: &Value, warnings: &mut Vec<Warning>) -> Result<HandDraft, ParseError> {
    let mut obj = Obj::new(root, "")?;
    obj.skip("schemaVersion");
    obj.skip("kind");
    let name = obj.req_str("name")?.to_owned();
    let measurer = obj.req_str("measurer")?.to_owned();
    let date_text = obj.req_str("date")?;
    let date = NaiveDate::parse_from_str(date_text, "%Y-%m-%d").map_err(|e| {
        ParseError::schema(
            "/date",
            format!("expected an ISO-8601 date (YYYY-MM-DD): {e}"),
        )
    })?;

    let mut one = obj.req_obj("oneTime")?;
    let one_time = OneTimeDraft {
        max_open: one.req_f64("maxOpenMm")?,
        min_width: one.req_f64("minWidthMm")?,
        max_width: one.req_f64("maxWidthMm")?,
        max_width_unbounded: one.opt_bool("maxWidthUnbounded")?.unwrap_or(false),
    };
    one.finish(warnings);

    let mut sets_obj = obj.req_obj("sets")?;
    let mut sets = Vec::new();
    for t in GraspType::ALL {
        if let Some(v) = sets_obj.get(t.key()) {
            sets.push(set_draft(t, v, &sets_obj.child(t.key()), warnings)?);
        }
    }
    sets_obj.finish(warnings);
    obj.finish(warnings);

    Ok(HandDraft {
        name,
        measurer,
        date,
        one_time,
        sets,
    })
}

fn set_draft(
    t: GraspType,
    v: &Value,
    path: &str,
    warnings: &mut Vec<Warning>,
) -> Result<SetDraft, ParseError> {
    let mut obj = Obj::new(v, path)?;
    let (items, cpath) = obj.req_array("configurations")?;
    let configurations = items
        .iter()
        .enumerate()
        .map(|(i, c)| profile_draft(c, &format!("{cpath}/{i}"), warnings))
        .collect::<Result<Vec<_>, _>>()?;
    obj.finish(warnings);
    Ok(SetDraft {
        grasp_type: t,
        configurations,
    })
}

fn profile_draft(
    v: &Value,
    path: &str,
    warnings: &mut Vec<Warning>,
) -> Result<ProfileDraft, ParseError> {
    let mut obj = Obj::new(v, path)?;
    let actuation = obj.req_f64("actuation")?;
    let role = obj.req_enum("role", ConfigRole::from_key, "max, intermediate or min")?;
    let distal_contact = obj.req_enum(
        "distalContact",
        DistalContact::from_key,
        "tip or fingerpadCenter",
    )?;
    let (items, ppath) = obj.req_array("pairs")?;
    let mut pairs = Vec::with_capacity(items.len());
    for (j, p) in items.iter().enumerate() {
        let mut pair = Obj::new(p, &format!("{ppath}/{j}"))?;
        pairs.push(PairDraft {
            depth: pair.req_f64("depthMm")?,
            extent: pair.req_f64("extent")?,
            label: pair.req_enum("label", PairLabel::from_key, "base, mid or distal")?,
        });
        pair.finish(warnings);
    }
    let provenance = Provenance {
        photo_ref: obj.opt_str("photoRef")?,
        palm_photo_ref: obj.opt_str("palmPhotoRef")?,
        note: obj.opt_str("note")?,
    };
    obj.finish(warnings);
    Ok(ProfileDraft {
        actuation,
        role,
        distal_contact,
        pairs,
        provenance,
    })
}

fn object(
    v: &Value,
    path: &str,
    skip: &[&'static str],
    warnings: &mut Vec<Warning>,
) -> Result<ObjectSpec, ParseError> {
    let mut obj = Obj::new(v, path)?;
    for key in skip {
        obj.skip(key);
    }
    let draft = ObjectDraft {
        name: obj.req_str("name")?.to_owned(),
        span: obj.req_f64("oSpanMm")?,
        depth: obj.req_f64("oDepthMm")?,
        width: obj.opt_f64("oWidthMm")?,
        area: obj.opt_f64("oAreaMm2")?,
    };
    obj.finish(warnings);
    if let Some(first) = validate_object(&draft).first() {
        return Err(ParseError::from_issue(path, first));
    }
    ObjectSpec::new(draft).map_err(|e| ParseError::schema(path, e.to_string()))
}

/// Rounds to 6 decimal places for output.
fn num(v: f64) -> Value {
    let r = (v * 1e6).round() / 1e6;
    // Avoid writing "-0.0".
    Value::from(if r == 0.0 { 0.0 } else { r })
}

fn object_value(o: &ObjectSpec) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("name".into(), o.name().into());
    m.insert("oSpanMm".into(), num(o.span()));
    m.insert("oDepthMm".into(), num(o.depth()));
    if let Some(w) = o.width() {
        m.insert("oWidthMm".into(), num(w));
    }
    if let Some(a) = o.area() {
        m.insert("oAreaMm2".into(), num(a));
    }
    m
}

fn hand_value(h: &HandRecord) -> Map<String, Value> {
    let one = h.one_time();
    let mut sets = Map::new();
    for set in h.sets() {
        let configurations: Vec<Value> = set
            .configurations()
            .iter()
            .map(|c| {
                let mut m = Map::new();
                m.insert("actuation".into(), num(c.actuation()));
                m.insert("role".into(), c.role().as_str().into());
                m.insert("distalContact".into(), c.distal_contact().as_str().into());
                let pairs: Vec<Value> = c
                    .pairs()
                    .iter()
                    .map(|p| {
                        json!({
                            "depthMm": num(p.depth()),
                            "extent": num(p.extent()),
                            "label": p.label().as_str(),
                        })
                    })
                    .collect();
                m.insert("pairs".into(), pairs.into());
                let prov = c.provenance();
                for (key, value) in [
                    ("photoRef", &prov.photo_ref),
                    ("palmPhotoRef", &prov.palm_photo_ref),
                    ("note", &prov.note),
                ] {
                    if let Some(v) = value {
                        m.insert(key.into(), v.as_str().into());
                    }
                }
                Value::Object(m)
            })
            .collect();
        sets.insert(
            set.grasp_type().key().into(),
            json!({ "configurations": configurations }),
        );
    }

    let mut m = Map::new();
    m.insert("name".into(), h.name().into());
    m.insert("measurer".into(), h.measurer().into());
    m.insert(
        "date".into(),
        h.date().format("%Y-%m-%d").to_string().into(),
    );
    m.insert(
        "oneTime".into(),
        json!({
            "maxOpenMm": num(one.max_open()),
            "minWidthMm": num(one.min_width()),
            "maxWidthMm": num(one.max_width()),
            "maxWidthUnbounded": one.max_width_unbounded(),
        }),
    );
    m.insert("sets".into(), Value::Object(sets));
    m
}

/// Serializes a document. The output is a pure function of `env`.
pub fn write_document(env: &DocumentEnvelope) -> String {
    let mut root = Map::new();
    root.insert("schemaVersion".into(), env.schema_version.as_str().into());
    root.insert("kind".into(), env.kind().into());
    let body = match &env.payload {
        Payload::Hand(h) => hand_value(h),
        Payload::Object(o) => object_value(o),
        Payload::ObjectSet(objects) => {
            let mut m = Map::new();
            let list: Vec<Value> = objects
                .iter()
                .map(|o| Value::Object(object_value(o)))
                .collect();
            m.insert("objects".into(), list.into());
            m
        }
    };
    root.extend(body);
    let mut out =
        serde_json::to_string_pretty(&Value::Object(root)).expect("JSON values always serialize");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
  "schemaVersion": "1.0",
  "kind": "hand",
  "name": "two-finger",
  "measurer": "bench",
  "date": "2024-05-02",
  "oneTime": { "maxOpenMm": 130, "minWidthMm": 20, "maxWidthMm": 60, "maxWidthUnbounded": true },
  "sets": {
    "precision": {
      "configurations": [
        { "actuation": 0, "role": "max", "distalContact": "tip",
          "pairs": [ { "depthMm": 0, "extent": 100, "label": "base" },
                     { "depthMm": 50, "extent": 120, "label": "distal" } ] },
        { "actuation": 1, "role": "min", "distalContact": "fingerpadCenter",
          "pairs": [ { "depthMm": 0, "extent": 20, "label": "base" },
                     { "depthMm": 40, "extent": 30, "label": "distal" } ] }
      ]
    }
  }
}"#;

    #[test]
    fn minimal_hand_parses_without_warnings() {
        let parsed = parse_document(MINIMAL.as_bytes()).unwrap();
        assert!(parsed.warnings.is_empty());
        assert_eq!(parsed.value.kind(), "hand");
        let Payload::Hand(h) = &parsed.value.payload else {
            panic!()
        };
        assert!(h.one_time().max_width_unbounded());
        assert_eq!(h.one_time().max_width(), 60.0);
    }

    #[test]
    fn unknown_field_is_a_warning() {
        let doc = MINIMAL.replace(
            "\"name\": \"two-finger\",",
            "\"name\": \"two-finger\", \"color\": \"red\",",
        );
        let parsed = parse_document(doc.as_bytes()).unwrap();
        assert_eq!(
            parsed.warnings,
            vec![Warning {
                path: "/color".into(),
                message: "unknown field \"color\" ignored".into()
            }]
        );
    }

    #[test]
    fn decreasing_depth_is_a_schema_error() {
        let doc = MINIMAL.replace("\"depthMm\": 40", "\"depthMm\": -0.5");
        let err = parse_document(doc.as_bytes()).unwrap_err();
        assert_eq!(
            err.path(),
            Some("/sets/precision/configurations/1/pairs/1/depthMm")
        );
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_document(b"{\n  \"kind\": \"hand\",\n  oops\n}").unwrap_err();
        let ParseError::Syntax { line, column, .. } = err else {
            panic!("{err:?}")
        };
        assert_eq!((line, column), (3, 3));
    }

    #[test]
    fn versions_and_kinds() {
        let v2 = MINIMAL.replace("\"1.0\"", "\"2.0\"");
        assert_eq!(
            parse_document(v2.as_bytes()),
            Err(ParseError::UnsupportedVersion("2.0".into()))
        );
        let v11 = MINIMAL.replace("\"1.0\"", "\"1.1\"");
        assert_eq!(
            parse_document(v11.as_bytes()).unwrap().value.schema_version,
            "1.1"
        );
        let k = MINIMAL.replace("\"kind\": \"hand\"", "\"kind\": \"glove\"");
        assert_eq!(
            parse_document(k.as_bytes()).unwrap_err().path(),
            Some("/kind")
        );
    }

    #[test]
    fn oversized_input_rejected() {
        let big = vec![b' '; MAX_DOCUMENT_BYTES + 1];
        assert_eq!(
            parse_document(&big),
            Err(ParseError::TooLarge(MAX_DOCUMENT_BYTES + 1))
        );
    }

    #[test]
    fn unbounded_width_is_written_explicitly() {
        let env = parse_document(MINIMAL.as_bytes()).unwrap().value;
        let text = write_document(&env);
        assert!(text.contains("\"maxWidthMm\": 60.0"));
        assert!(text.contains("\"maxWidthUnbounded\": true"));
        assert!(text.ends_with("}\n"));
        assert_eq!(parse_document(text.as_bytes()).unwrap().value, env);
    }

    #[test]
    fn object_documents() {
        let doc = r#"{"schemaVersion":"1.0","kind":"object","name":"apple","oSpanMm":75,"oDepthMm":70,"oWidthMm":72}"#;
        let parsed = parse_objects(doc.as_bytes()).unwrap();
        assert_eq!(parsed.value[0].width(), Some(72.0));

        let set = r#"{"schemaVersion":"1.0","kind":"object-set","objects":[
            {"name":"a","oSpanMm":1,"oDepthMm":1},{"name":"b","oSpanMm":1,"oDepthMm":0}]}"#;
        let err = parse_objects(set.as_bytes()).unwrap_err();
        assert_eq!(err.path(), Some("/objects/1/oDepthMm"));
        let ParseError::Schema { code, .. } = err else {
            panic!()
        };
        assert_eq!(code, Some("NON_POSITIVE_DIMENSION"));
    }

    #[test]
    fn pointer_escaping() {
        let doc = MINIMAL.replace(
            "\"name\": \"two-finger\",",
            "\"name\": \"two-finger\", \"a/b~c\": 1,",
        );
        let parsed = parse_document(doc.as_bytes()).unwrap();
        assert_eq!(parsed.warnings[0].path, "/a~1b~0c");
    }
}

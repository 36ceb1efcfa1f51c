//! Content-addressed store of result envelopes.
//!
//! The key is the SHA-256 of the canonical JSON of the version tag and the
//! request echo. `serde_json` maps are sorted, so key order never matters.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::commands::Envelope;
use crate::VERSION;

pub fn key(request: &Value) -> String {
    let canonical = json!({ "version": VERSION, "request": request }).to_string();
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

fn path_for(dir: &Path, request: &Value) -> PathBuf {
    dir.join(format!("{}.json", key(request)))
}

pub fn load(dir: &Path, request: &Value) -> Option<Envelope> {
    let bytes = fs::read(path_for(dir, request)).ok()?;
    let stored: Value = serde_json::from_slice(&bytes).ok()?;
    if stored.get("version")? != VERSION || stored.get("request")? != request {
        return None;
    }
    Some(Envelope {
        request: request.clone(),
        result: stored.get("result")?.clone(),
        text: stored.get("text")?.as_str()?.to_owned(),
    })
}

pub fn store(dir: &Path, env: &Envelope) {
    let entry = json!({
        "version": VERSION,
        "request": env.request,
        "result": env.result,
        "text": env.text,
    });
    let target = path_for(dir, &env.request);
    // write then rename so concurrent readers never see a partial file
    let tmp = target.with_extension(format!("tmp{}", std::process::id()));
    let written = fs::create_dir_all(dir)
        .and_then(|_| fs::write(&tmp, entry.to_string()))
        .and_then(|_| fs::rename(&tmp, &target));
    if let Err(e) = written {
        let _ = fs::remove_file(&tmp);
        eprintln!("warning: cannot write cache entry {}: {e}", target.display());
    }
}

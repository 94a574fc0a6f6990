//! Where a group comes from: a catalog entry, a presentation file or a
//! multiplication table.

use std::path::{Path, PathBuf};

use bogomolov::groupkit::{pc_nilpotency_class, GroupTable};
use bogomolov::pcgroup::{catalog, parse_pc, CatalogParams, PcGroup};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupSource {
    Catalog(CatalogParams),
    /// A presentation in the text format.
    Pc(PathBuf),
    /// A JSON multiplication table.
    Table(PathBuf),
}

/// The identification printed in every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<CatalogParams>,
    pub order: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<usize>,
}

/// A loaded group; table-only groups have no presentation.
#[derive(Clone, Debug)]
pub struct LoadedGroup {
    pub descriptor: GroupDescriptor,
    pub pc: Option<PcGroup>,
    pub table: Option<GroupTable>,
}

impl LoadedGroup {
    pub fn from_pc(pc: PcGroup, params: Option<CatalogParams>) -> Self {
        let descriptor = GroupDescriptor {
            name: pc.presentation().name.clone(),
            family: params.as_ref().map(|p| p.family().tag().to_string()),
            params,
            order: pc.order(),
            class: pc_nilpotency_class(&pc),
        };
        Self {
            descriptor,
            pc: Some(pc),
            table: None,
        }
    }

    pub fn from_table(name: &str, table: GroupTable) -> Result<Self, CliError> {
        let class = table.nilpotency_class().ok();
        let descriptor = GroupDescriptor {
            name: name.to_string(),
            family: None,
            params: None,
            order: table.order() as u128,
            class,
        };
        Ok(Self {
            descriptor,
            pc: None,
            table: Some(table),
        })
    }

    pub fn load(source: &GroupSource) -> Result<Self, CliError> {
        match source {
            GroupSource::Catalog(params) => {
                let pc = PcGroup::new(catalog(params)?)?;
                Ok(Self::from_pc(pc, Some(params.clone())))
            }
            GroupSource::Pc(path) => {
                let text = read(path)?;
                let pres = parse_pc(&text)
                    .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
                Ok(Self::from_pc(PcGroup::new(pres)?, None))
            }
            GroupSource::Table(path) => {
                let table = GroupTable::from_json(&read(path)?)?;
                let name = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                Self::from_table(&name, table)
            }
        }
    }

    pub fn pc(&self) -> Result<&PcGroup, CliError> {
        self.pc
            .as_ref()
            .ok_or_else(|| CliError::usage("this operation needs a polycyclic presentation"))
    }

    /// The multiplication table, enumerating the presentation when needed.
    pub fn table(&mut self, cap: usize) -> Result<&GroupTable, CliError> {
        if self.table.is_none() {
            let pc = self.pc()?;
            self.table = Some(GroupTable::from_pc(pc, cap)?);
        }
        Ok(self.table.as_ref().expect("just filled"))
    }
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

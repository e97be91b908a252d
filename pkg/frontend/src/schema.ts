/** Zod schemas for the "sliceforge/1" wire formats. */

import { z } from "zod";

export const SCHEMA_VERSION = "sliceforge/1";

export const Dot = z.object({
  stem: z.number().int(),
  filtration: z.number().int(),
  mackey: z.string(),
  names: z.array(z.string()),
  c2_names: z.array(z.string()),
});

export const Diff = z.object({
  page: z.number().int(),
  level: z.number().int(),
  from: z.tuple([z.number().int(), z.number().int()]),
  to: z.tuple([z.number().int(), z.number().int()]),
  source: z.string(),
  target: z.string(),
});

export const Exotic = z.object({
  kind: z.enum(["transfer", "restriction"]),
  stem: z.number().int(),
  from: z.number().int(),
  to: z.number().int(),
  source: z.string(),
  target: z.string(),
  jump: z.number().int(),
});

export const ChartSnapshot = z.object({
  schema: z.literal(SCHEMA_VERSION),
  window: z.object({
    stem_min: z.number().int(),
    stem_max: z.number().int(),
    filt_min: z.number().int(),
    filt_max: z.number().int(),
  }),
  page: z.number().int(),
  dots: z.array(Dot),
  diffs: z.array(Diff),
  exotic: z.array(Exotic),
});

export const ClassDetail = z.object({
  schema: z.literal(SCHEMA_VERSION),
  stem: z.number().int(),
  filtration: z.number().int(),
  mackey: z.unknown(),
  names: z.array(z.string()),
  c2_names: z.array(z.string()),
});

export const AssertResponse = z.object({
  schema: z.literal(SCHEMA_VERSION),
  status: z.enum(["applied", "duplicate"]),
  delta: z
    .array(
      z.object({
        page: z.number().int(),
        from: z.array(z.number().int()),
        to: z.array(z.number().int()),
        source: z.string(),
        target: z.string(),
      }),
    )
    .optional(),
  chart_unchanged: z.boolean().optional(),
});

export const ContradictionBody = z.object({
  schema: z.literal(SCHEMA_VERSION),
  status: z.literal("contradiction"),
  contradictions: z.array(z.string()),
});

export const ServerEvent = z.object({
  schema: z.literal(SCHEMA_VERSION),
  event: z.string(),
  page: z.number().int().optional(),
});

export type DotT = z.infer<typeof Dot>;
export type DiffT = z.infer<typeof Diff>;
export type ExoticT = z.infer<typeof Exotic>;
export type ChartSnapshotT = z.infer<typeof ChartSnapshot>;
export type ClassDetailT = z.infer<typeof ClassDetail>;
export type AssertResponseT = z.infer<typeof AssertResponse>;
export type ContradictionBodyT = z.infer<typeof ContradictionBody>;
export type ServerEventT = z.infer<typeof ServerEvent>;

/** Payload shapes, matching the service's JSON exactly. */

export type ViewName = "Splash" | "Ego" | "Physical" | "Global";
export type AddSource = "Suggestion" | "Search" | "Physical";
export type LinkStatusName = "Unconfirmed" | "HalfConfirmed" | "FullyConfirmed";

export interface OfficePayload {
  floor_id: string;
  x: number;
  y: number;
}

export interface PersonPayload {
  id: string;
  display_name: string;
  group: string;
  avatar_ref: string | null;
  office: OfficePayload | null;
  is_registered: boolean;
}

export interface LinkPayload {
  id: string;
  a: string;
  b: string;
  link_type: string;
  created_by: string;
  created_at: string;
  a_confirmed: boolean;
  b_confirmed: boolean;
  status: LinkStatusName;
}

/** Ego payloads add the per-link flag for "not yet confirmed by me". */
export interface EgoLinkPayload extends LinkPayload {
  transparent: boolean;
}

export interface EgoPayload {
  subject: string;
  neighbors: PersonPayload[];
  links: EgoLinkPayload[];
  stats: { node_count: number; link_count: number };
}

export interface GlobalNodePayload extends PersonPayload {
  community: number;
  color: number;
}

export interface GlobalPayload {
  nodes: GlobalNodePayload[];
  links: LinkPayload[];
}

export interface SuggestionPayload {
  person: PersonPayload;
  score: number;
  reason: string;
}

export interface FloorPayload {
  floor_id: string;
  name: string;
  image_ref: string | null;
  width: number;
  height: number;
}

export interface FloorDetailPayload {
  floor: FloorPayload;
  occupants: PersonPayload[];
}

export interface ClientEvent {
  kind: "ViewSwitch" | "Search";
  view?: ViewName;
  query?: string;
}

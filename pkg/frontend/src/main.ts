import { createApi } from "./api.js";
import { mount } from "./dom.js";

mount(createApi());
